// Command-line front end. Subcommands:
//
//   eval-kernel  --group I<k> --kappa a[,b] --z x1,x2 --w x1,x2 [--bessel] [--json]
//   laplace      --group I<k> --kappa a[,b] --z x1,x2 --w x1,x2 --s s
//   intertwine   --group I<k> --kappa a[,b] --poly "<text>" --z x1,x2 [--xu-line q]
//   table        --group ... --kappa ... --z ... --w ... --sweep key=a:b:step [--out file]
//   transform    --group ... --kappa ... --y x1,x2 --input gaussian
//   verify       --suite {core,kernels,laplace,xu,all} [--seed N]
//
// Exit codes: 0 success, 1 verification failure or numeric error, 2 usage
// error. The env var DUNKL_THREADS caps worker threads for table rows and
// verify properties; output order is always the input order. An optional
// key=value config file (--config) sets quadrature orders and the kernel
// truncation degree; explicit flags win over the file.

#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dunkl/dihedral.hpp"
#include "dunkl/dunklops.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/oracle.hpp"
#include "dunkl/poly2.hpp"
#include "dunkl/special.hpp"
#include "dunkl/transform.hpp"

namespace dunkl::cli {

struct CliConfig {
    int jacobi_order = kDefaultJacobiOrder;
    int simplex_order = kDefaultSimplexOrder;
    int kernel_truncation = kDefaultKernelTruncation;
    int radial_order = kDefaultRadialOrder;
    int angular_order = kDefaultAngularOrder;
    double transform_radius = kDefaultTransformRadius;
    double tolerance = 1e-7;  // reported in --json; the suites pin their own
};

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline void load_config_file(const std::string& path, CliConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config",
                                       path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto strip = [&](std::string& s) {
            s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
            s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
        };
        strip(key);
        strip(value);
        try {
            if (key == "jacobi_order")
                cfg.jacobi_order = std::stoi(value);
            else if (key == "simplex_order")
                cfg.simplex_order = std::stoi(value);
            else if (key == "kernel_truncation")
                cfg.kernel_truncation = std::stoi(value);
            else if (key == "radial_order")
                cfg.radial_order = std::stoi(value);
            else if (key == "angular_order")
                cfg.angular_order = std::stoi(value);
            else if (key == "transform_radius")
                cfg.transform_radius = std::stod(value);
            else if (key == "tolerance")
                cfg.tolerance = std::stod(value);
            else
                throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) +
                                                           ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) +
                                                       ": bad value for '" + key + "'");
        }
    }
}

inline int thread_budget() {
    if (const char* env = std::getenv("DUNKL_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (...) {
            return 1;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) across at most thread_budget() workers.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_budget(), std::max(1, count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

namespace detail {

struct GroupArgs {
    std::string group_text;
    std::vector<double> kappa;

    DihedralGroup build() const {
        if (group_text.size() < 2 || group_text[0] != 'I')
            throw CLI::ValidationError("--group", "expected I<k>, got '" + group_text + "'");
        int k = 0;
        try {
            size_t used = 0;
            k = std::stoi(group_text.substr(1), &used);
            if (used + 1 != group_text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw CLI::ValidationError("--group", "expected I<k>, got '" + group_text + "'");
        }
        if (k < 1) throw CLI::ValidationError("--group", "k must be >= 1");
        const bool even = (k % 2 == 0);
        if (even && kappa.size() != 2)
            throw CLI::ValidationError("--kappa", "even groups need two multiplicities a,b");
        if (!even && kappa.size() != 1)
            throw CLI::ValidationError("--kappa", "odd groups take a single multiplicity");
        for (double v : kappa)
            if (v < 0.0) throw CLI::ValidationError("--kappa", "multiplicities must be >= 0");
        // For odd k both slots carry the single multiplicity so that echoed
        // output (CSV beta column) stays meaningful.
        const double a = kappa[0];
        const double b = even ? kappa[1] : kappa[0];
        return build_group(k, a, b);
    }
};

inline PlanePoint as_point(const std::vector<double>& v) { return PlanePoint{v[0], v[1]}; }

inline double bessel_series_oracle(const DunklContext& ctx, PlanePoint z, PlanePoint w, int N) {
    const auto elems = ctx.group.elements();
    double sum = 0.0;
    for (const auto& m : elems) {
        const auto [w1, w2] = m.apply(w.x1, w.x2);
        sum += kernel_series(ctx, z, PlanePoint{w1, w2}, N);
    }
    return sum / static_cast<double>(elems.size());
}

struct SweepSpec {
    std::string key;  // z.r | z.phi | w.r | w.phi
    double lo = 0.0, hi = 0.0, step = 0.0;

    static SweepSpec parse(const std::string& text) {
        const size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--sweep", "expected key=a:b:step");
        SweepSpec s;
        s.key = text.substr(0, eq);
        if (s.key != "z.r" && s.key != "z.phi" && s.key != "w.r" && s.key != "w.phi")
            throw CLI::ValidationError("--sweep", "key must be one of z.r, z.phi, w.r, w.phi");
        const std::string range = text.substr(eq + 1);
        const size_t c1 = range.find(':');
        const size_t c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw CLI::ValidationError("--sweep", "expected key=a:b:step");
        try {
            s.lo = std::stod(range.substr(0, c1));
            s.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
            s.step = std::stod(range.substr(c2 + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--sweep", "bad number in range");
        }
        if (s.step <= 0.0 || s.hi < s.lo)
            throw CLI::ValidationError("--sweep", "need a <= b and step > 0");
        return s;
    }

    std::vector<double> values() const {
        std::vector<double> out;
        for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi)); v += step)
            out.push_back(v);
        return out;
    }

    void apply(double v, PlanePoint& z, PlanePoint& w) const {
        PlanePoint& target = (key[0] == 'z') ? z : w;
        const double r = target.r();
        const double phi = target.phi();
        if (key.substr(2) == "r")
            target = PlanePoint{v * std::cos(phi), v * std::sin(phi)};
        else
            target = PlanePoint{r * std::cos(v), r * std::sin(v)};
    }
};

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Poly2 random_poly(Rng& rng, int max_degree, int terms) {
    Poly2 p;
    std::uniform_int_distribution<int> deg(0, max_degree);
    for (int t = 0; t < terms; ++t) {
        const int n = deg(rng);
        std::uniform_int_distribution<int> split(0, n);
        const int j = split(rng);
        p = p + Poly2::monomial(n - j, j, uniform(rng, -3.0, 3.0));
    }
    return p;
}

struct Property {
    std::string name;
    std::string suite;  // core | kernels | laplace | xu
    std::function<std::string(Rng&, const CliConfig&)> check;  // "" means pass
};

inline std::vector<DunklContext> sample_contexts() {
    return {make_context(2, 0.5, 1.5), make_context(3, 0.8), make_context(4, 0.6, 1.1),
            make_context(5, 1.3)};
}

inline std::vector<Property> verify_properties() {
    std::vector<Property> props;
    const auto fail = [](const std::string& msg) { return msg; };

    props.push_back({"poly-parse-print-roundtrip", "core", [fail](Rng& rng, const CliConfig&) {
        for (int it = 0; it < 20; ++it) {
            const Poly2 p = random_poly(rng, 5, 8);
            const Poly2 q = parse_poly(print_poly(p));
            if (!p.almost_equal(q, 1e-12)) return fail("round trip changed a coefficient");
        }
        return std::string();
    }});

    props.push_back({"dunkl-commutativity", "core", [fail](Rng& rng, const CliConfig&) {
        for (const auto& ctx : sample_contexts()) {
            const Poly2 p = random_poly(rng, 6, 8);
            const Poly2 a = dunkl_t1(ctx, dunkl_t2(ctx, p));
            const Poly2 b = dunkl_t2(ctx, dunkl_t1(ctx, p));
            const double scale = std::max(1.0, a.max_abs_coeff());
            if (!(a - b).almost_equal(Poly2::zero(), 1e-10 * scale))
                return fail("T1 T2 != T2 T1 for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"heat-semigroup-inverse", "core", [fail](Rng& rng, const CliConfig&) {
        for (const auto& ctx : sample_contexts()) {
            const Poly2 p = random_poly(rng, 8, 10);
            const Poly2 back = heat_semigroup(ctx, -0.37, heat_semigroup(ctx, 0.37, p));
            if (!back.almost_equal(p, 1e-10 * std::max(1.0, p.max_abs_coeff())))
                return fail("heat(-s) heat(s) != id for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"fischer-symmetry", "core", [fail](Rng& rng, const CliConfig&) {
        for (const auto& ctx : sample_contexts()) {
            const Poly2 p = random_poly(rng, 5, 6);
            const Poly2 q = random_poly(rng, 5, 6);
            const double pq = fischer_pair(ctx, p, q);
            const double qp = fischer_pair(ctx, q, p);
            if (std::abs(pq - qp) > 1e-10 * std::max(1.0, std::abs(pq)))
                return fail("pairing not symmetric for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"oracle-v-roundtrip", "core", [fail](Rng& rng, const CliConfig&) {
        for (const auto& ctx : sample_contexts()) {
            const Poly2 p = random_poly(rng, 6, 8);
            const double scale = std::max(1.0, p.max_abs_coeff());
            if (!v_inverse(ctx, v_apply(ctx, p)).almost_equal(p, 1e-9 * scale))
                return fail("v_inverse(v_apply(p)) != p for k=" + std::to_string(ctx.group.k));
            if (!v_apply(ctx, v_inverse(ctx, p)).almost_equal(p, 1e-9 * scale))
                return fail("v_apply(v_inverse(p)) != p for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"oracle-intertwining", "core", [fail](Rng& rng, const CliConfig&) {
        for (const auto& ctx : sample_contexts()) {
            const Poly2 p = random_poly(rng, 6, 8);
            const Poly2 vp = v_apply(ctx, p);
            const double scale = std::max(1.0, vp.max_abs_coeff());
            const Poly2 d1 = dunkl_t1(ctx, vp) - v_apply(ctx, p.derivative(1));
            const Poly2 d2 = dunkl_t2(ctx, vp) - v_apply(ctx, p.derivative(2));
            if (!d1.almost_equal(Poly2::zero(), 1e-9 * scale) ||
                !d2.almost_equal(Poly2::zero(), 1e-9 * scale))
                return fail("T_j V != V d_j for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"kernel-matches-series", "kernels", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            for (int it = 0; it < 3; ++it) {
                const PlanePoint z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
                const PlanePoint w{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
                const double a = dunkl_kernel(ctx.group, z, w, cfg.jacobi_order);
                const double b =
                    kernel_series(ctx, z, w, cfg.kernel_truncation);
                if (std::abs(a - b) > 1e-7)
                    return fail("kernel mismatch " + fmt17(std::abs(a - b)) + " for k=" +
                                std::to_string(ctx.group.k));
            }
        }
        return std::string();
    }});

    props.push_back({"bessel-matches-average", "kernels", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            for (int it = 0; it < 2; ++it) {
                const PlanePoint z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
                const PlanePoint w{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
                const double a = generalized_bessel(ctx.group, z, w, cfg.jacobi_order);
                const double b = bessel_series_oracle(ctx, z, w, cfg.kernel_truncation);
                if (std::abs(a - b) > 1e-7)
                    return fail("bessel mismatch " + fmt17(std::abs(a - b)) + " for k=" +
                                std::to_string(ctx.group.k));
            }
        }
        return std::string();
    }});

    props.push_back({"kernel-symmetry", "kernels", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            const PlanePoint z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            const PlanePoint w{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            const double a = dunkl_kernel(ctx.group, z, w, cfg.jacobi_order);
            const double b = dunkl_kernel(ctx.group, w, z, cfg.jacobi_order);
            if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
                return fail("E(z,w) != E(w,z) for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"kernel-positive", "kernels", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            const PlanePoint w{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            for (double r : {0.4, 1.0, 1.5}) {
                for (int a = 0; a < 8; ++a) {
                    const double th = a * std::acos(-1.0) / 4.0;
                    const PlanePoint z{r * std::cos(th), r * std::sin(th)};
                    if (!(dunkl_kernel(ctx.group, z, w, cfg.jacobi_order) > 0.0))
                        return fail("kernel not positive for k=" + std::to_string(ctx.group.k));
                }
            }
        }
        return std::string();
    }});

    props.push_back({"bessel-imaginary-bound", "kernels", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            for (int it = 0; it < 3; ++it) {
                const PlanePoint z{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
                const PlanePoint w{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
                const std::complex<double> v = generalized_bessel_scaled(
                    ctx.group, z, w, std::complex<double>(0.0, 1.0), cfg.jacobi_order);
                if (std::abs(v) > 1.0 + 1e-9)
                    return fail("|J(iz,w)| > 1 for k=" + std::to_string(ctx.group.k));
            }
        }
        return std::string();
    }});

    props.push_back({"kernel-i2-closed-form", "kernels", [fail](Rng& rng, const CliConfig& cfg) {
        const DihedralGroup g = build_group(2, 0.5, 1.5);
        for (int it = 0; it < 3; ++it) {
            const PlanePoint z{uniform(rng, -1.2, 1.2), uniform(rng, -1.2, 1.2)};
            const PlanePoint w{uniform(rng, -1.2, 1.2), uniform(rng, -1.2, 1.2)};
            const double a = dunkl_kernel(g, z, w, cfg.jacobi_order);
            const double b = dunkl_kernel_i2_closed(g, z, w, cfg.jacobi_order);
            if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
                return fail("I2 closed form disagrees by " + fmt17(std::abs(a - b)));
        }
        return std::string();
    }});

    props.push_back({"kernel-m2-route", "kernels", [fail](Rng& rng, const CliConfig& cfg) {
        const DihedralGroup g = build_group(4, 0.6, 1.1);
        for (int it = 0; it < 3; ++it) {
            const PlanePoint z{uniform(rng, -1.2, 1.2), uniform(rng, -1.2, 1.2)};
            const PlanePoint w{uniform(rng, -1.2, 1.2), uniform(rng, -1.2, 1.2)};
            const double a = dunkl_kernel(g, z, w, cfg.jacobi_order);
            const double b = dunkl_kernel_m2(g, z, w, cfg.jacobi_order);
            if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a)))
                return fail("m2 route disagrees by " + fmt17(std::abs(a - b)));
        }
        return std::string();
    }});

    props.push_back({"laplace-forms-agree", "laplace", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            for (int it = 0; it < 3; ++it) {
                const PlanePoint z{uniform(rng, -1.2, 1.2), uniform(rng, -1.2, 1.2)};
                const PlanePoint w{uniform(rng, -1.2, 1.2), uniform(rng, -1.2, 1.2)};
                const double s = z.r() * w.r() + uniform(rng, 0.3, 2.0);
                const double a = dunkl_kernel_laplace(ctx.group, z, w, s, LaplaceForm::factored,
                                                      cfg.jacobi_order);
                const double b = dunkl_kernel_laplace(ctx.group, z, w, s, LaplaceForm::bracket,
                                                      cfg.jacobi_order);
                if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
                    return fail("forms differ by " + fmt17(std::abs(a - b)) + " for k=" +
                                std::to_string(ctx.group.k));
            }
        }
        return std::string();
    }});

    props.push_back({"laplace-positive", "laplace", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            const PlanePoint z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            const PlanePoint w{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            const double s = z.r() * w.r() + 0.7;
            if (!(dunkl_kernel_laplace(ctx.group, z, w, s, LaplaceForm::checked,
                                       cfg.jacobi_order) > 0.0))
                return fail("transform not positive for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"laplace-matches-series", "laplace", [fail](Rng&, const CliConfig&) {
        // Numeric Laplace transform of the radial series against the closed
        // form: integral f(t) e^{-st} dt with f(t) = t^{k lambda} g(t), g
        // entire, via generalized Gauss-Laguerre in tau = s t.
        for (int k : {2, 3}) {
            for (double xi : {-0.6, 0.7}) {
                const double lam = 1.2, b = 1.0, s = 2.0;
                const QuadratureRule rule = laguerre_rule(k * lam, 64);
                double num = 0.0;
                for (int i = 0; i < rule.size(); ++i) {
                    const double t = rule.node(i) / s;
                    const double f = f_series(k, lam, b, xi, t);
                    num += rule.weights[static_cast<size_t>(i)] *
                           (f / std::pow(t, k * lam));
                }
                num /= std::pow(s, k * lam + 1.0);
                const double closed = f_laplace(k, lam, b, xi, s);
                if (std::abs(num - closed) > 1e-8 * std::max(1.0, std::abs(closed)))
                    return fail("numeric Laplace mismatch " + fmt17(std::abs(num - closed)));
            }
        }
        return std::string();
    }});

    props.push_back({"laplace-large-s", "laplace", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : sample_contexts()) {
            const PlanePoint z{uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8)};
            const PlanePoint w{uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8)};
            const double s = 1e4;
            const double gamma = ctx.group.total_multiplicity();
            const double v = dunkl_kernel_laplace(ctx.group, z, w, s, LaplaceForm::factored,
                                                  cfg.jacobi_order);
            const double lead = v * std::exp((gamma + 1.0) * std::log(s) - std::lgamma(gamma + 1.0));
            if (std::abs(lead - 1.0) > 1e-3)
                return fail("leading asymptotic off by " + fmt17(std::abs(lead - 1.0)));
        }
        return std::string();
    }});

    props.push_back({"xu-line-matches-oracle", "xu", [fail](Rng& rng, const CliConfig& cfg) {
        for (int k : {3, 5}) {
            const DunklContext ctx = make_context(k, k == 3 ? 0.9 : 0.6);
            const Poly2 p = random_poly(rng, 4, 5);
            const Poly2 vp = v_apply(ctx, p);
            std::uniform_int_distribution<int> qd(0, 2 * k - 1);
            const int q = qd(rng);
            const double r = uniform(rng, 0.2, 1.3);
            const double ang = q * std::acos(-1.0) / k;
            const double value = xu_line(ctx.group, p, r, q, cfg.simplex_order);
            const double oracle = vp.eval(r * std::cos(ang), r * std::sin(ang));
            if (std::abs(value - oracle) > 1e-6 * std::max(1.0, std::abs(oracle)))
                return fail("xu_line off by " + fmt17(std::abs(value - oracle)) + " for k=" +
                            std::to_string(k));
        }
        return std::string();
    }});

    props.push_back({"xu-preserves-constants", "xu", [fail](Rng&, const CliConfig& cfg) {
        for (int k : {3, 5}) {
            const DihedralGroup g = build_group(k, 0.75);
            const double v = xu_line(g, Poly2::constant(1.0), 0.9, 1, cfg.simplex_order);
            if (std::abs(v - 1.0) > 1e-10) return fail("V(1) != 1, off by " + fmt17(v - 1.0));
        }
        return std::string();
    }});

    props.push_back({"intertwine-matches-oracle", "xu", [fail](Rng& rng, const CliConfig& cfg) {
        for (const auto& ctx : {make_context(3, 0.8), make_context(4, 0.7, 1.3)}) {
            const Poly2 p = random_poly(rng, 4, 5);
            const Poly2 vp = v_apply(ctx, p);
            const PlanePoint z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            const double value = intertwine_general(ctx.group, p, z, cfg.jacobi_order);
            const double oracle = vp.eval(z.x1, z.x2);
            if (std::abs(value - oracle) > 1e-6 * std::max(1.0, std::abs(oracle)))
                return fail("intertwine_general off by " + fmt17(std::abs(value - oracle)) +
                            " for k=" + std::to_string(ctx.group.k));
        }
        return std::string();
    }});

    props.push_back({"intertwine-invariant-route", "xu", [fail](Rng& rng, const CliConfig& cfg) {
        const DunklContext ctx = make_context(4, 0.7, 1.3);
        Poly2 p = Poly2::monomial(2, 0) + Poly2::monomial(0, 2);  // |x|^2
        p = p * p;
        const PlanePoint z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
        const double a = intertwine_invariant(ctx.group, p, z, cfg.jacobi_order);
        const double b = v_apply(ctx, p).eval(z.x1, z.x2);
        if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(b)))
            return fail("invariant route off by " + fmt17(std::abs(a - b)));
        return std::string();
    }});

    return props;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Dihedral Dunkl kernels, generalized Bessel functions, and the intertwining operator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "key=value file with quadrature orders");

    detail::GroupArgs ga;
    std::vector<double> zv, wv, yv;
    std::string poly_text, sweep_text, out_path, input_kind = "gaussian", suite = "all";
    double s_value = 0.0;
    int xu_q = -1;
    bool want_bessel = false, want_json = false;
    int opt_truncation = -1, opt_jacobi = -1, opt_simplex = -1, opt_radial = -1, opt_angular = -1;
    double opt_radius = -1.0;
    unsigned long long seed = 1234;

    const auto add_common = [&](CLI::App* sub, bool needs_w) {
        sub->add_option("--group", ga.group_text, "dihedral group, I<k>")->required();
        sub->add_option("--kappa", ga.kappa, "multiplicities a[,b]")
            ->required()
            ->delimiter(',')
            ->expected(1, 2);
        sub->add_option("--truncation", opt_truncation, "kernel series truncation degree");
        sub->add_option("--jacobi-order", opt_jacobi, "Gauss-Jacobi order");
        sub->add_option("--simplex-order", opt_simplex, "simplex rule order per axis");
        if (needs_w) {
            sub->add_option("--z", zv, "first argument x1,x2")
                ->required()
                ->delimiter(',')
                ->expected(2);
            sub->add_option("--w", wv, "second argument x1,x2")
                ->required()
                ->delimiter(',')
                ->expected(2);
        }
    };

    CLI::App* sub_eval = app.add_subcommand("eval-kernel", "evaluate the Dunkl kernel");
    add_common(sub_eval, true);
    sub_eval->add_flag("--bessel", want_bessel, "evaluate the generalized Bessel function");
    sub_eval->add_flag("--json", want_json, "emit a JSON record");

    CLI::App* sub_laplace = app.add_subcommand("laplace", "Laplace transform of the radial kernel");
    add_common(sub_laplace, true);
    sub_laplace->add_option("--s", s_value, "transform variable, s > |z||w|")->required();

    CLI::App* sub_inter = app.add_subcommand("intertwine", "apply the intertwining operator");
    add_common(sub_inter, false);
    sub_inter->add_option("--poly", poly_text, "polynomial in x1, x2")->required();
    sub_inter->add_option("--z", zv, "evaluation point x1,x2")->required()->delimiter(',')->expected(2);
    sub_inter->add_option("--xu-line", xu_q, "line index q in [0, 2k) for odd groups");

    CLI::App* sub_table = app.add_subcommand("table", "sweep one parameter to CSV");
    add_common(sub_table, true);
    sub_table->add_flag("--bessel", want_bessel, "tabulate the generalized Bessel function");
    sub_table->add_option("--sweep", sweep_text, "key=a:b:step with key in {z.r,z.phi,w.r,w.phi}")
        ->required();
    sub_table->add_option("--out", out_path, "output CSV path (default: stdout)");

    CLI::App* sub_transform = app.add_subcommand("transform", "Dunkl transform at a point");
    add_common(sub_transform, false);
    sub_transform->add_option("--y", yv, "frequency point x1,x2")->required()->delimiter(',')->expected(2);
    sub_transform->add_option("--input", input_kind, "input profile (gaussian)");
    sub_transform->add_option("--radius", opt_radius, "truncation radius, >= 8");
    sub_transform->add_option("--radial-order", opt_radial, "radial quadrature order");
    sub_transform->add_option("--angular-order", opt_angular, "angular quadrature order per sector");

    CLI::App* sub_verify = app.add_subcommand("verify", "run the invariant suites");
    sub_verify->add_option("--suite", suite, "core|kernels|laplace|xu|all")
        ->check(CLI::IsMember({"core", "kernels", "laplace", "xu", "all"}));
    sub_verify->add_option("--seed", seed, "random seed");

    std::vector<std::string> argv_store;
    argv_store.push_back("dunkl");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_store.size());
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All) << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CliConfig cfg;
    try {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (opt_truncation >= 0) cfg.kernel_truncation = opt_truncation;
        if (opt_jacobi >= 0) cfg.jacobi_order = opt_jacobi;
        if (opt_simplex >= 0) cfg.simplex_order = opt_simplex;
        if (opt_radial >= 0) cfg.radial_order = opt_radial;
        if (opt_angular >= 0) cfg.angular_order = opt_angular;
        if (opt_radius >= 0.0) cfg.transform_radius = opt_radius;

        if (*sub_eval) {
            const DihedralGroup g = ga.build();
            const DunklContext ctx = make_context(g.k, g.alpha, g.beta);
            const PlanePoint z = detail::as_point(zv), w = detail::as_point(wv);
            const double value = want_bessel ? generalized_bessel(g, z, w, cfg.jacobi_order)
                                             : dunkl_kernel(g, z, w, cfg.jacobi_order);
            const double oracle =
                want_bessel ? detail::bessel_series_oracle(ctx, z, w, cfg.kernel_truncation)
                            : kernel_series(ctx, z, w, cfg.kernel_truncation);
            if (want_json) {
                nlohmann::json j{
                    {"command", "eval-kernel"},
                    {"group", ga.group_text},
                    {"alpha", g.alpha},
                    {"beta", g.beta},
                    {"z", {z.x1, z.x2}},
                    {"w", {w.x1, w.x2}},
                    {"method", want_bessel ? "generalized_bessel" : "dunkl_kernel"},
                    {"truncation", cfg.kernel_truncation},
                    {"jacobi_order", cfg.jacobi_order},
                    {"value", value},
                    {"oracle", oracle},
                    {"abs_err", std::abs(value - oracle)},
                    {"tolerances", {{"oracle_abs_err", cfg.tolerance}}},
                };
                out << j.dump(2) << "\n";
            } else {
                out << fmt17(value) << "\n";
            }
            return 0;
        }

        if (*sub_laplace) {
            const DihedralGroup g = ga.build();
            const PlanePoint z = detail::as_point(zv), w = detail::as_point(wv);
            const double value = dunkl_kernel_laplace(g, z, w, s_value, LaplaceForm::checked,
                                                      cfg.jacobi_order);
            out << fmt17(value) << "\n";
            return 0;
        }

        if (*sub_inter) {
            const DihedralGroup g = ga.build();
            const DunklContext ctx = make_context(g.k, g.alpha, g.beta);
            const Poly2 p = parse_poly(poly_text);
            const PlanePoint z = detail::as_point(zv);
            double value = 0.0;
            PlanePoint at = z;
            if (xu_q >= 0) {
                const double r = z.r();
                const double ang = xu_q * std::acos(-1.0) / g.k;
                at = PlanePoint{r * std::cos(ang), r * std::sin(ang)};
                value = xu_line(g, p, r, xu_q, cfg.simplex_order);
            } else {
                value = intertwine_general(g, p, z, cfg.jacobi_order);
            }
            const double oracle = v_apply(ctx, p).eval(at.x1, at.x2);
            out << fmt17(value) << " " << fmt17(oracle) << " " << fmt17(std::abs(value - oracle))
                << "\n";
            return 0;
        }

        if (*sub_table) {
            const DihedralGroup g = ga.build();
            const DunklContext ctx = make_context(g.k, g.alpha, g.beta);
            const PlanePoint z0 = detail::as_point(zv), w0 = detail::as_point(wv);
            const detail::SweepSpec sweep = detail::SweepSpec::parse(sweep_text);
            const std::vector<double> values = sweep.values();
            std::vector<std::string> rows(values.size());
            std::exception_ptr first_error;
            std::mutex error_mutex;
            parallel_for(static_cast<int>(values.size()), [&](int i) {
                try {
                    PlanePoint z = z0, w = w0;
                    sweep.apply(values[static_cast<size_t>(i)], z, w);
                    const double value = want_bessel
                                             ? generalized_bessel(g, z, w, cfg.jacobi_order)
                                             : dunkl_kernel(g, z, w, cfg.jacobi_order);
                    const double oracle =
                        want_bessel
                            ? detail::bessel_series_oracle(ctx, z, w, cfg.kernel_truncation)
                            : kernel_series(ctx, z, w, cfg.kernel_truncation);
                    std::ostringstream row;
                    row << "I" << g.k << "," << fmt17(g.alpha) << "," << fmt17(g.beta) << ","
                        << fmt17(z.x1) << "," << fmt17(z.x2) << "," << fmt17(w.x1) << ","
                        << fmt17(w.x2) << "," << fmt17(value) << "," << fmt17(oracle) << ","
                        << fmt17(std::abs(value - oracle));
                    rows[static_cast<size_t>(i)] = row.str();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
            if (first_error) std::rethrow_exception(first_error);
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw CLI::ValidationError("--out", "cannot open '" + out_path + "'");
            }
            std::ostream& dst = out_path.empty() ? out : file;
            dst << "group,alpha,beta,z1,z2,w1,w2,value,oracle,abs_err\n";
            for (const auto& row : rows) dst << row << "\n";
            return 0;
        }

        if (*sub_transform) {
            const DihedralGroup g = ga.build();
            if (input_kind != "gaussian")
                throw CLI::ValidationError("--input", "only 'gaussian' is supported");
            const PlanePoint y = detail::as_point(yv);
            const std::complex<double> value = dunkl_transform(
                g, [](double x1, double x2) { return std::exp(-0.5 * (x1 * x1 + x2 * x2)); },
                y.x1, y.x2, cfg.transform_radius, cfg.kernel_truncation, cfg.radial_order,
                cfg.angular_order);
            if (std::abs(value.imag()) <= 1e-10 * (1.0 + std::abs(value.real())))
                out << fmt17(value.real()) << "\n";
            else
                out << fmt17(value.real()) << " " << fmt17(value.imag()) << "\n";
            return 0;
        }

        if (*sub_verify) {
            const auto props = detail::verify_properties();
            std::vector<int> selected;
            for (int i = 0; i < static_cast<int>(props.size()); ++i)
                if (suite == "all" || props[static_cast<size_t>(i)].suite == suite)
                    selected.push_back(i);
            std::vector<std::string> failures(selected.size());
            parallel_for(static_cast<int>(selected.size()), [&](int idx) {
                const auto& prop = props[static_cast<size_t>(selected[static_cast<size_t>(idx)])];
                detail::Rng rng(seed + 0x9e3779b97f4a7c15ULL * (selected[static_cast<size_t>(idx)] + 1));
                try {
                    failures[static_cast<size_t>(idx)] = prop.check(rng, cfg);
                } catch (const std::exception& e) {
                    failures[static_cast<size_t>(idx)] = std::string("exception: ") + e.what();
                }
            });
            bool ok = true;
            for (size_t i = 0; i < selected.size(); ++i) {
                const auto& prop = props[static_cast<size_t>(selected[i])];
                if (failures[i].empty()) {
                    out << "PASS " << prop.name << "\n";
                } else {
                    out << "FAIL " << prop.name << ": " << failures[i] << "\n";
                    ok = false;
                }
            }
            return ok ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PolyParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace dunkl::cli
