#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace woe {

/// Specialize with a `static constexpr std::array<std::pair<E, std::string_view>, N> names`
/// to get `enum_name` / `parse_enum` for E.
template <class E>
struct EnumNames;

template <class E>
constexpr std::string_view enum_name(E value) noexcept {
    for (const auto& [v, name] : EnumNames<E>::names) {
        if (v == value) return name;
    }
    return "?";
}

template <class E>
constexpr std::optional<E> parse_enum(std::string_view name) noexcept {
    for (const auto& [v, n] : EnumNames<E>::names) {
        if (n == name) return v;
    }
    return std::nullopt;
}

template <class E>
std::string enum_choices() {
    std::string out;
    for (const auto& [v, name] : EnumNames<E>::names) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

}  // namespace woe
