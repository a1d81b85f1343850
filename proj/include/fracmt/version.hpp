#pragma once

namespace fracmt {

inline constexpr const char* artifact_version = "0.1.0";

}
