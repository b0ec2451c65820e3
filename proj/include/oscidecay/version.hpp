#ifndef OSCIDECAY_VERSION_HPP
#define OSCIDECAY_VERSION_HPP

namespace oscidecay {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
