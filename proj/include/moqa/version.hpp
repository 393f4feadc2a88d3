#ifndef MOQA_VERSION_HPP
#define MOQA_VERSION_HPP

namespace moqa {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
