#pragma once

namespace dyson {

inline constexpr const char* kVersion = "0.1.0";

inline const char* build_id() {
#if defined(__clang__)
    return "dysonsim/0.1.0 clang " __clang_version__;
#elif defined(__GNUC__)
#define DYSON_STR2(x) #x
#define DYSON_STR(x) DYSON_STR2(x)
    return "dysonsim/0.1.0 gcc " DYSON_STR(__GNUC__) "." DYSON_STR(__GNUC_MINOR__);
#else
    return "dysonsim/0.1.0 unknown-compiler";
#endif
}

}  // namespace dyson
