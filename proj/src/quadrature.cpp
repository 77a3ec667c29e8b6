#include "vixsmile/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "vixsmile/error.hpp"

namespace vixsmile {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
// Odd indices are the Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980614550, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

struct Segment {
    Integrand g;
    double a;
    double b;
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double parent_error;
    std::size_t segment;

    bool operator<(const Panel& other) const { return error < other.error; }
};

double checked(const Integrand& g, double w) {
    const double v = g(w);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "integrand is not finite at node " << w;
        throw Error(ErrorCode::Domain, msg.str());
    }
    return v;
}

Panel apply_rule(const Segment& seg, std::size_t index, double a, double b, double parent_error) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = checked(seg.g, center);
    double kronrod = fc * kKronrodWeights[10];
    double gauss = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
        const std::size_t node = 2 * j + 1;
        const double dx = half * kKronrodNodes[node];
        const double sum = checked(seg.g, center - dx) + checked(seg.g, center + dx);
        gauss += kGaussWeights[j] * sum;
        kronrod += kKronrodWeights[node] * sum;
    }
    for (std::size_t j = 0; j < 5; ++j) {
        const std::size_t node = 2 * j;
        const double dx = half * kKronrodNodes[node];
        kronrod += kKronrodWeights[node] * (checked(seg.g, center - dx) + checked(seg.g, center + dx));
    }
    return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half), parent_error, index};
}

// Map a power-law endpoint singularity onto a bounded integrand in w = |t - e|^(alpha+1).
Segment transformed_segment(const Integrand& f, double endpoint, double length, double exponent, bool mirror) {
    const double power = 1.0 / (exponent + 1.0);
    Integrand g = [f, endpoint, power, mirror](double w) {
        const double offset = std::pow(w, power);
        const double jacobian = power * std::pow(w, power - 1.0);
        const double t = mirror ? endpoint - offset : endpoint + offset;
        return f(t) * jacobian;
    };
    return Segment{std::move(g), 0.0, std::pow(length, exponent + 1.0)};
}

}  // namespace

void QuadSpec::validate() const {
    require(abs_tol > 0.0 && std::isfinite(abs_tol), ErrorCode::InvalidArgument, "QuadSpec: abs_tol must be positive");
    require(rel_tol > 0.0 && std::isfinite(rel_tol), ErrorCode::InvalidArgument, "QuadSpec: rel_tol must be positive");
    require(max_subdivisions >= 1, ErrorCode::InvalidArgument, "QuadSpec: max_subdivisions must be at least 1");
    require(singular_exponent > -1.0 && singular_exponent <= 0.0, ErrorCode::Domain,
            "QuadSpec: singular_exponent must lie in (-1, 0]");
}

QuadSpec QuadSpec::with_tolerances(double abs_tol, double rel_tol) {
    QuadSpec spec;
    spec.abs_tol = abs_tol;
    spec.rel_tol = rel_tol;
    return spec;
}

QuadSpec& QuadSpec::left_singular(double exponent) {
    singular_left = true;
    singular_exponent = exponent;
    return *this;
}

QuadSpec& QuadSpec::right_singular(double exponent) {
    singular_right = true;
    singular_exponent = exponent;
    return *this;
}

QuadResult integrate_detailed(const Integrand& f, double lo, double hi, const QuadSpec& spec) {
    spec.validate();
    require(std::isfinite(lo) && std::isfinite(hi), ErrorCode::Domain, "integrate: bounds must be finite");
    require(lo <= hi, ErrorCode::Domain, "integrate: lower bound exceeds upper bound");

    QuadResult result;
    if (lo == hi) {
        return result;
    }

    std::vector<Segment> segments;
    const double alpha = spec.singular_exponent;
    const bool substitute = alpha != 0.0;
    if (substitute && spec.singular_left && spec.singular_right) {
        const double mid = lo + 0.5 * (hi - lo);
        segments.push_back(transformed_segment(f, lo, mid - lo, alpha, false));
        segments.push_back(transformed_segment(f, hi, hi - mid, alpha, true));
    } else if (substitute && spec.singular_left) {
        segments.push_back(transformed_segment(f, lo, hi - lo, alpha, false));
    } else if (substitute && spec.singular_right) {
        segments.push_back(transformed_segment(f, hi, hi - lo, alpha, true));
    } else {
        segments.push_back(Segment{f, lo, hi});
    }

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        Panel p = apply_rule(segments[i], i, segments[i].a, segments[i].b, std::numeric_limits<double>::infinity());
        total += p.value;
        total_error += p.error;
        heap.push(p);
        result.evaluations += 21;
    }

    const auto tolerance = [&]() { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_error > tolerance()) {
        const Panel worst = heap.top();
        const Segment& seg = segments[worst.segment];
        const double width = worst.b - worst.a;
        const double floor = 8.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::abs(worst.a), std::abs(worst.b), std::numeric_limits<double>::min()});
        const bool exhausted = result.subdivisions >= spec.max_subdivisions;
        if (exhausted || width <= floor) {
            const bool at_edge = worst.a == seg.a || worst.b == seg.b;
            const bool not_decaying = worst.error > 0.7 * worst.parent_error;
            const bool narrow = width < 1e-9 * (seg.b - seg.a);
            if (at_edge && narrow && not_decaying) {
                throw Error(ErrorCode::Domain,
                            "integrate: refinement diverges at an endpoint (undeclared non-integrable singularity)");
            }
            std::ostringstream msg;
            msg << "integrate: tolerance not reached after " << result.subdivisions
                << " subdivisions (estimate " << total << ", error bound " << total_error << ")";
            throw ToleranceError(msg.str(), total, total_error);
        }

        heap.pop();
        const double mid = worst.a + 0.5 * width;
        const Panel left = apply_rule(seg, worst.segment, worst.a, mid, worst.error);
        const Panel right = apply_rule(seg, worst.segment, mid, worst.b, worst.error);
        result.evaluations += 42;
        ++result.subdivisions;

        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        // Refresh the running sums periodically so cancellation drift stays bounded.
        if (result.subdivisions % 64 == 0) {
            auto copy = heap;
            total = 0.0;
            total_error = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_error += copy.top().error;
                copy.pop();
            }
        }
    }

    // Final sum in a fixed order for reproducibility.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
        return x.segment != y.segment ? x.segment < y.segment : x.a < y.a;
    });
    result.value = 0.0;
    result.abs_error = 0.0;
    for (const Panel& p : panels) {
        result.value += p.value;
        result.abs_error += p.error;
    }
    return result;
}

}  // namespace vixsmile
