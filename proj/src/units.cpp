#include "corrnoise/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "corrnoise/error.hpp"
#include "corrnoise/types.hpp"

namespace corrnoise::units {

namespace {

struct Unit {
    std::string_view name;
    double factor;
};

constexpr std::array kTime{Unit{"ps", 1e-6}, Unit{"ns", 1e-3}, Unit{"us", 1.0}, Unit{"ms", 1e3}, Unit{"s", 1e6}};
constexpr std::array kFrequency{Unit{"Hz", kTwoPi * 1e-6},  Unit{"kHz", kTwoPi * 1e-3}, Unit{"MHz", kTwoPi},
                                Unit{"GHz", kTwoPi * 1e3},  Unit{"rad/s", 1e-6},        Unit{"rad/ms", 1e-3},
                                Unit{"rad/us", 1.0},        Unit{"rad/ns", 1e3},        Unit{"1/s", 1e-6},
                                Unit{"1/ms", 1e-3},         Unit{"1/us", 1.0},          Unit{"1/ns", 1e3}};
constexpr std::array kAngle{Unit{"rad", 1.0}, Unit{"deg", kPi / 180.0}, Unit{"pi", kPi}};
constexpr std::array kLength{Unit{"nm", 1e-3}, Unit{"um", 1.0}, Unit{"mm", 1e3}, Unit{"m", 1e6}};
constexpr std::array kSpeed{Unit{"m/s", 1.0}, Unit{"km/s", 1e3}, Unit{"um/us", 1.0}};
constexpr std::array kTemperature{Unit{"K", 1.0}, Unit{"mK", 1e-3}, Unit{"uK", 1e-6}};

template <std::size_t N>
std::string list(const std::array<Unit, N>& units) {
    std::string s;
    for (const auto& u : units) {
        if (!s.empty()) s += ", ";
        s += u.name;
    }
    return s;
}

template <std::size_t N>
double lookup(std::string_view unit, const std::array<Unit, N>& units, std::string_view text) {
    for (const auto& u : units) {
        if (u.name == unit) return u.factor;
    }
    throw DomainError("cannot read '" + std::string(text) + "': expected one of the units " + list(units));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

std::string_view accepted_units(Dimension dim) {
    static const std::array<std::string, 7> names{list(kTime),  list(kFrequency),  list(kAngle), list(kLength),
                                                  list(kSpeed), list(kTemperature), "(none)"};
    return names[static_cast<std::size_t>(dim)];
}

double parse_quantity(std::string_view text, Dimension dim) {
    const std::string_view s = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || !std::isfinite(value)) {
        throw DomainError("cannot read '" + std::string(text) + "' as a number with unit");
    }
    const std::string_view unit = trim(std::string_view(res.ptr, static_cast<std::size_t>(s.data() + s.size() - res.ptr)));
    if (dim == Dimension::Dimensionless) {
        if (!unit.empty()) {
            throw DomainError("'" + std::string(text) + "' must be a plain number");
        }
        return value;
    }
    if (unit.empty()) {
        throw DomainError("'" + std::string(text) + "' needs an explicit unit (" + std::string(accepted_units(dim)) + ")");
    }
    switch (dim) {
    case Dimension::Time:
        return value * lookup(unit, kTime, text);
    case Dimension::Frequency:
        return value * lookup(unit, kFrequency, text);
    case Dimension::Angle:
        return value * lookup(unit, kAngle, text);
    case Dimension::Length:
        return value * lookup(unit, kLength, text);
    case Dimension::Speed:
        return value * lookup(unit, kSpeed, text);
    case Dimension::Temperature:
        return value * lookup(unit, kTemperature, text);
    case Dimension::Dimensionless:
        break;
    }
    return value;
}

double beta_from_temperature(double kelvin) {
    if (!(kelvin > 0.0)) {
        throw DomainError("temperature must be positive");
    }
    return kHbarOverKb / kelvin;
}

} // namespace corrnoise::units
