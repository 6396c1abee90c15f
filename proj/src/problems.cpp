#include "ofs/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofs {

namespace {

constexpr double kPi = std::numbers::pi;

// ---- two-objective family ------------------------------------------------

double zdt_linear_g(const Genome& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i];
    return 1.0 + 9.0 * s / static_cast<double>(x.size() - 1);
}

Objectives zdt1_eval(const Genome& x) {
    const double f1 = x[0];
    const double g = zdt_linear_g(x);
    return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

Objectives zdt2_eval(const Genome& x) {
    const double f1 = x[0];
    const double g = zdt_linear_g(x);
    return {f1, g * (1.0 - (f1 / g) * (f1 / g))};
}

Objectives zdt3_eval(const Genome& x) {
    const double f1 = x[0];
    const double g = zdt_linear_g(x);
    return {f1, g * (1.0 - std::sqrt(f1 / g) - (f1 / g) * std::sin(10.0 * kPi * f1))};
}

Objectives zdt4_eval(const Genome& x) {
    const double f1 = x[0];
    double g = 1.0 + 10.0 * static_cast<double>(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i) {
        g += x[i] * x[i] - 10.0 * std::cos(4.0 * kPi * x[i]);
    }
    return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

// Bitstring benchmark: 30 bits for the first variable, then ten 5-bit
// variables. A gene encodes a set bit when >= 0.5.
Objectives zdt5_eval(const Genome& x) {
    auto ones = [&x](std::size_t begin, std::size_t len) {
        int u = 0;
        for (std::size_t i = begin; i < begin + len; ++i) {
            if (x[i] >= 0.5) ++u;
        }
        return u;
    };
    const double f1 = 1.0 + ones(0, 30);
    double g = 0.0;
    for (int v = 0; v < 10; ++v) {
        const int u = ones(30 + static_cast<std::size_t>(v) * 5, 5);
        g += (u < 5) ? 2.0 + u : 1.0;
    }
    return {f1, g / f1};
}

Objectives zdt6_eval(const Genome& x) {
    const double f1 = 1.0 - std::exp(-4.0 * x[0]) * std::pow(std::sin(6.0 * kPi * x[0]), 6.0);
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i];
    const double g = 1.0 + 9.0 * std::pow(s / static_cast<double>(x.size() - 1), 0.25);
    return {f1, g * (1.0 - (f1 / g) * (f1 / g))};
}

std::vector<Objectives> sample_f1_range(std::size_t count, double lo, double hi,
                                        double (*f2)(double)) {
    std::vector<Objectives> pts;
    if (count == 0) return pts;
    if (count == 1) return {{lo, f2(lo)}};
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        pts.push_back({f1, f2(f1)});
    }
    return pts;
}

// Parameterized as t -> (t^2, 1 - t) so samples spread evenly along the
// curve instead of bunching near f1 = 1.
std::vector<Objectives> zdt1_front(std::size_t count) {
    std::vector<Objectives> pts;
    if (count == 0) return pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t =
            (count == 1) ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        pts.push_back({t * t, 1.0 - t});
    }
    return pts;
}

std::vector<Objectives> zdt2_front(std::size_t count) {
    return sample_f1_range(count, 0.0, 1.0, +[](double f1) { return 1.0 - f1 * f1; });
}

// The optimum front is disconnected; these are the f1 spans of its five
// pieces. Points are spread proportionally to piece length.
std::vector<Objectives> zdt3_front(std::size_t count) {
    static constexpr double kRegions[5][2] = {
        {0.0, 0.0830015349},
        {0.1822287800, 0.2577623634},
        {0.4093136748, 0.4538821041},
        {0.6183967944, 0.6525117038},
        {0.8233317983, 0.8518328654},
    };
    auto f2 = [](double f1) { return 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * kPi * f1); };
    double total = 0.0;
    for (const auto& r : kRegions) total += r[1] - r[0];
    std::vector<Objectives> pts;
    if (count == 0) return pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double s = (count == 1) ? 0.0
                                : total * static_cast<double>(i) / static_cast<double>(count - 1);
        double f1 = kRegions[4][1];
        for (const auto& r : kRegions) {
            const double len = r[1] - r[0];
            if (s <= len) {
                f1 = r[0] + s;
                break;
            }
            s -= len;
        }
        pts.push_back({f1, f2(f1)});
    }
    return pts;
}

std::vector<Objectives> zdt5_front(std::size_t) {
    std::vector<Objectives> pts;
    pts.reserve(31);
    for (int f1 = 1; f1 <= 31; ++f1) {
        pts.push_back({static_cast<double>(f1), 10.0 / static_cast<double>(f1)});
    }
    return pts;
}

std::vector<Objectives> zdt6_front(std::size_t count) {
    return sample_f1_range(count, 0.2807753191, 1.0,
                           +[](double f1) { return 1.0 - f1 * f1; });
}

// ---- three-objective family ----------------------------------------------

double dtlz1_g(const Genome& x, std::size_t k) {
    double g = static_cast<double>(k);
    for (std::size_t i = x.size() - k; i < x.size(); ++i) {
        const double d = x[i] - 0.5;
        g += d * d - std::cos(20.0 * kPi * d);
    }
    return 100.0 * g;
}

double sphere_g(const Genome& x, std::size_t k) {
    double g = 0.0;
    for (std::size_t i = x.size() - k; i < x.size(); ++i) {
        const double d = x[i] - 0.5;
        g += d * d;
    }
    return g;
}

Objectives dtlz1_eval(const Genome& x) {
    const double g = dtlz1_g(x, 5);
    const double a = x[0];
    const double b = x[1];
    return {0.5 * a * b * (1.0 + g), 0.5 * a * (1.0 - b) * (1.0 + g), 0.5 * (1.0 - a) * (1.0 + g)};
}

Objectives dtlz_shape(double a, double b, double g) {
    return {(1.0 + g) * std::cos(a * kPi / 2.0) * std::cos(b * kPi / 2.0),
            (1.0 + g) * std::cos(a * kPi / 2.0) * std::sin(b * kPi / 2.0),
            (1.0 + g) * std::sin(a * kPi / 2.0)};
}

Objectives dtlz2_eval(const Genome& x) { return dtlz_shape(x[0], x[1], sphere_g(x, 10)); }

Objectives dtlz3_eval(const Genome& x) { return dtlz_shape(x[0], x[1], dtlz1_g(x, 10)); }

Objectives dtlz4_eval(const Genome& x) {
    constexpr double kAlpha = 100.0;
    return dtlz_shape(std::pow(x[0], kAlpha), std::pow(x[1], kAlpha), sphere_g(x, 10));
}

Objectives dtlz_curve_shape(const Genome& x, double g) {
    const double t1 = x[0] * kPi / 2.0;
    const double t2 = kPi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[1]);
    return {(1.0 + g) * std::cos(t1) * std::cos(t2), (1.0 + g) * std::cos(t1) * std::sin(t2),
            (1.0 + g) * std::sin(t1)};
}

Objectives dtlz5_eval(const Genome& x) { return dtlz_curve_shape(x, sphere_g(x, 10)); }

Objectives dtlz6_eval(const Genome& x) {
    double g = 0.0;
    for (std::size_t i = x.size() - 10; i < x.size(); ++i) g += std::pow(x[i], 0.1);
    return dtlz_curve_shape(x, g);
}

// Grid over the (a, b) surface parameters, row-major, truncated to count.
std::vector<Objectives> grid_front(std::size_t count, Objectives (*shape)(double, double)) {
    std::vector<Objectives> pts;
    if (count == 0) return pts;
    const auto side = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(count))));
    pts.reserve(count);
    for (std::size_t i = 0; i < side && pts.size() < count; ++i) {
        for (std::size_t j = 0; j < side && pts.size() < count; ++j) {
            const double a =
                (side == 1) ? 0.5 : static_cast<double>(i) / static_cast<double>(side - 1);
            const double b =
                (side == 1) ? 0.5 : static_cast<double>(j) / static_cast<double>(side - 1);
            pts.push_back(shape(a, b));
        }
    }
    return pts;
}

std::vector<Objectives> dtlz1_front(std::size_t count) {
    return grid_front(count, +[](double a, double b) {
        return Objectives{0.5 * a * b, 0.5 * a * (1.0 - b), 0.5 * (1.0 - a)};
    });
}

std::vector<Objectives> sphere_front(std::size_t count) {
    return grid_front(count, +[](double a, double b) { return dtlz_shape(a, b, 0.0); });
}

std::vector<Objectives> curve_front(std::size_t count) {
    std::vector<Objectives> pts;
    if (count == 0) return pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t =
            (count == 1) ? 0.5 : static_cast<double>(i) / static_cast<double>(count - 1);
        const double t1 = t * kPi / 2.0;
        pts.push_back({std::cos(t1) * std::cos(kPi / 4.0), std::cos(t1) * std::sin(kPi / 4.0),
                       std::sin(t1)});
    }
    return pts;
}

Problem base_problem(std::string name, std::size_t genes, std::size_t objectives,
                     Objectives (*eval)(const Genome&),
                     std::vector<Objectives> (*front)(std::size_t), Objectives hv_ref) {
    Problem p;
    p.name = std::move(name);
    p.genome_length = genes;
    p.objective_count = objectives;
    p.lower.assign(genes, 0.0);
    p.upper.assign(genes, 1.0);
    p.hv_reference = std::move(hv_ref);
    p.raw_eval = eval;
    p.raw_front = front;
    return p;
}

} // namespace

Objectives Problem::evaluate(const Genome& genome) const {
    if (genome.size() != genome_length) {
        throw std::invalid_argument("problem " + name + ": genome length " +
                                    std::to_string(genome.size()) + ", expected " +
                                    std::to_string(genome_length));
    }
    for (std::size_t i = 0; i < genome.size(); ++i) {
        if (!(genome[i] >= lower[i] && genome[i] <= upper[i])) {
            throw std::invalid_argument("problem " + name + ": gene " + std::to_string(i) +
                                        " out of bounds");
        }
    }
    if (eval_cost_us > 0) busy_wait(std::chrono::microseconds(eval_cost_us));
    return raw_eval(genome);
}

std::vector<Objectives> Problem::true_front(std::size_t count) const {
    return raw_front(count);
}

Problem make_problem(const std::string& name, long eval_cost_us) {
    std::string key = name;
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    Problem p;
    if (key == "zdt1") {
        p = base_problem("zdt1", 30, 2, zdt1_eval, zdt1_front, {1.1, 1.1});
    } else if (key == "zdt2") {
        p = base_problem("zdt2", 30, 2, zdt2_eval, zdt2_front, {1.1, 1.1});
    } else if (key == "zdt3") {
        p = base_problem("zdt3", 30, 2, zdt3_eval, zdt3_front, {1.1, 1.1});
    } else if (key == "zdt4") {
        p = base_problem("zdt4", 10, 2, zdt4_eval, zdt1_front, {1.1, 1.1});
        for (std::size_t i = 1; i < p.genome_length; ++i) {
            p.lower[i] = -5.0;
            p.upper[i] = 5.0;
        }
    } else if (key == "zdt5") {
        p = base_problem("zdt5", 80, 2, zdt5_eval, zdt5_front, {32.0, 11.0});
    } else if (key == "zdt6") {
        p = base_problem("zdt6", 10, 2, zdt6_eval, zdt6_front, {1.1, 1.1});
    } else if (key == "dtlz1") {
        p = base_problem("dtlz1", 7, 3, dtlz1_eval, dtlz1_front, {});
    } else if (key == "dtlz2") {
        p = base_problem("dtlz2", 12, 3, dtlz2_eval, sphere_front, {});
    } else if (key == "dtlz3") {
        p = base_problem("dtlz3", 12, 3, dtlz3_eval, sphere_front, {});
    } else if (key == "dtlz4") {
        p = base_problem("dtlz4", 12, 3, dtlz4_eval, sphere_front, {});
    } else if (key == "dtlz5") {
        p = base_problem("dtlz5", 12, 3, dtlz5_eval, curve_front, {});
    } else if (key == "dtlz6") {
        p = base_problem("dtlz6", 12, 3, dtlz6_eval, curve_front, {});
    } else {
        throw std::invalid_argument("unknown problem '" + name + "'");
    }
    p.eval_cost_us = eval_cost_us;
    return p;
}

std::vector<std::string> problem_names() {
    return {"zdt1", "zdt2", "zdt3", "zdt4",  "zdt5",  "zdt6",
            "dtlz1", "dtlz2", "dtlz3", "dtlz4", "dtlz5", "dtlz6"};
}

void busy_wait(std::chrono::microseconds duration) {
    const auto deadline = std::chrono::steady_clock::now() + duration;
    while (std::chrono::steady_clock::now() < deadline) {
        // spin
    }
}

} // namespace ofs
