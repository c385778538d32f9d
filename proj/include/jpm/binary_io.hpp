#pragma once

// Little-endian fixed-width primitives for index files.

#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace jpm {

class format_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace bin {

template <class T>
    requires std::is_unsigned_v<T>
void write(std::ostream& out, T value) {
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    out.write(buf, sizeof(T));
}

template <class T>
    requires std::is_unsigned_v<T>
T read(std::istream& in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
        throw format_error("unexpected end of index data");
    }
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<T>(buf[i]) << (8 * i);
    }
    return value;
}

inline void write_string(std::ostream& out, const std::string& s) {
    write<std::uint64_t>(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_string(std::istream& in, std::uint64_t max_len = 1u << 30) {
    auto len = read<std::uint64_t>(in);
    if (len > max_len) {
        throw format_error("string length out of range");
    }
    std::string s(len, '\0');
    if (len && !in.read(s.data(), static_cast<std::streamsize>(len))) {
        throw format_error("unexpected end of index data");
    }
    return s;
}

template <class T>
void write_vector(std::ostream& out, const std::vector<T>& v) {
    write<std::uint64_t>(out, v.size());
    for (T x : v) {
        write<T>(out, x);
    }
}

template <class T>
std::vector<T> read_vector(std::istream& in, std::uint64_t max_len) {
    auto len = read<std::uint64_t>(in);
    if (len > max_len) {
        throw format_error("vector length out of range");
    }
    std::vector<T> v(len);
    for (auto& x : v) {
        x = read<T>(in);
    }
    return v;
}

}  // namespace bin
}  // namespace jpm
