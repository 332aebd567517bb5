#ifndef ALKIT_NUMBER_FORMAT_HPP
#define ALKIT_NUMBER_FORMAT_HPP

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace alkit {

// 17 significant digits, locale-independent, round-trip exact for
// doubles. Shared by the state files, CSV export and SVG export so
// identical values always serialize to identical bytes.
inline std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

}  // namespace alkit

#endif  // ALKIT_NUMBER_FORMAT_HPP
