#include "tbp/dyadic.hpp"

#include <charconv>

namespace tbp {

namespace {

std::int64_t parseInt(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Fault("malformed box key integer: " + std::string(s));
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

void checkDepth(std::int64_t d) {
    if (d < 0 || d > kMaxDepth) throw Fault("box key depth out of range");
}

}  // namespace

DyadicBox DyadicBox::fromKey(const std::string& key) {
    const auto factors = split(key, '|');
    if (factors.size() != 4) throw Fault("box key must have 4 factors");

    DyadicBox box;
    {
        const auto f = split(factors[0], ':');
        if (f.size() != 2) throw Fault("segment factor must be depth:center");
        const auto d = parseInt(f[0]);
        checkDepth(d);
        box.q0 = Patch{PatchKind::segment, static_cast<int>(d), parseInt(f[1]), 0};
    }
    for (int i = 0; i < 3; ++i) {
        const auto f = split(factors[static_cast<std::size_t>(i + 1)], ':');
        if (f.size() != 3) throw Fault("square factor must be depth:cx:cy");
        const auto d = parseInt(f[0]);
        checkDepth(d);
        box.squares[static_cast<std::size_t>(i)] =
            Patch{PatchKind::square, static_cast<int>(d), parseInt(f[1]), parseInt(f[2])};
    }
    return box;
}

}  // namespace tbp
