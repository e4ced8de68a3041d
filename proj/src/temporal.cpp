#include "fortrend/temporal.hpp"

#include <cmath>

#include "fortrend/errors.hpp"

namespace fortrend {

char variant_letter(Variant v) {
    switch (v) {
        case Variant::A: return 'A';
        case Variant::B: return 'B';
        case Variant::C: return 'C';
        case Variant::D: return 'D';
        case Variant::E: return 'E';
    }
    return '?';
}

Variant variant_from_letter(char c) {
    switch (c) {
        case 'A': case 'a': return Variant::A;
        case 'B': case 'b': return Variant::B;
        case 'C': case 'c': return Variant::C;
        case 'D': case 'd': return Variant::D;
        case 'E': case 'e': return Variant::E;
    }
    throw ValidationError(std::string("unknown temporal variant '") + c + "'");
}

std::string variant_description(Variant v) {
    switch (v) {
        case Variant::A: return "exponential";
        case Variant::B: return "quadratic-exponential";
        case Variant::C: return "cubic-exponential";
        case Variant::D: return "double-exponential";
        case Variant::E: return "piecewise-exponential";
    }
    return "?";
}

Variant TemporalModel::variant() const {
    return static_cast<Variant>(params_.index());
}

double TemporalModel::eval(double year) const {
    return std::visit(
        [year](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ExpLaw>) {
                return p.intercept + p.slope * year;
            } else if constexpr (std::is_same_v<T, QuadExpLaw>) {
                double d = year - p.vertex_year;
                return p.offset + p.curvature * d * d;
            } else if constexpr (std::is_same_v<T, CubicExpLaw>) {
                double d = year - p.inflection_year;
                return p.offset + p.coefficient * d * d * d;
            } else if constexpr (std::is_same_v<T, DoubleExpLaw>) {
                double inner = p.log_amplitude + p.rate * year;
                if (inner > 700.0)
                    throw OverflowError(
                        "model D inner exponent " + std::to_string(inner) +
                        " exceeds the exp() overflow guard (700)");
                return p.offset + std::exp(inner);
            } else {
                return year <= p.breakpoint
                           ? p.pre_intercept + p.pre_slope * year
                           : p.post_intercept + p.post_slope * year;
            }
        },
        params_);
}

TemporalModel apply_gauge(const TemporalModel& tm, double c) {
    if (!std::isfinite(c) || c == 0.0)
        throw GaugeError("gauge factor must be finite and nonzero");
    return std::visit(
        [c](const auto& p) -> TemporalModel {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ExpLaw>) {
                return ExpLaw{p.slope * c, p.intercept * c};
            } else if constexpr (std::is_same_v<T, QuadExpLaw>) {
                return QuadExpLaw{p.vertex_year, p.curvature * c, p.offset * c};
            } else if constexpr (std::is_same_v<T, CubicExpLaw>) {
                return CubicExpLaw{p.inflection_year, p.coefficient * c,
                                   p.offset * c};
            } else if constexpr (std::is_same_v<T, DoubleExpLaw>) {
                if (c <= 0.0)
                    throw GaugeError(
                        "model D cannot be rescaled by a non-positive factor");
                return DoubleExpLaw{p.offset * c, p.log_amplitude + std::log(c),
                                    p.rate};
            } else {
                return PiecewiseExpLaw{p.pre_intercept * c, p.pre_slope * c,
                                       p.post_intercept * c, p.post_slope * c,
                                       p.breakpoint};
            }
        },
        tm.params());
}

TemporalModel anchor(const TemporalModel& tm, double anchor_year,
                     double anchor_value) {
    double shift = anchor_value - tm.eval(anchor_year);
    return std::visit(
        [shift](const auto& p) -> TemporalModel {
            using T = std::decay_t<decltype(p)>;
            auto q = p;
            if constexpr (std::is_same_v<T, ExpLaw>) {
                q.intercept += shift;
            } else if constexpr (std::is_same_v<T, QuadExpLaw> ||
                                 std::is_same_v<T, CubicExpLaw>) {
                q.offset += shift;
            } else if constexpr (std::is_same_v<T, DoubleExpLaw>) {
                q.offset += shift;
            } else {
                q.pre_intercept += shift;
                q.post_intercept += shift;
            }
            return q;
        },
        tm.params());
}

int shape_param_count(Variant v) {
    switch (v) {
        case Variant::A: return 1;
        case Variant::B: return 2;
        case Variant::C: return 2;
        case Variant::D: return 2;
        case Variant::E: return 3;
    }
    return 0;
}

int temporal_param_count(Variant v) { return shape_param_count(v) + 1; }

} // namespace fortrend
