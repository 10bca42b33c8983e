#ifndef SOLIPLASMON_VERSION_HPP
#define SOLIPLASMON_VERSION_HPP

namespace soliplasmon {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
