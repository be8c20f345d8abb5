#include "mildns/errors.hpp"
#include "mildns/format.hpp"
#include "mildns/operators.hpp"
#include "mildns/spaces.hpp"
#include "mildns/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace mildns::verify {

namespace {

constexpr double kRelationTol = 1e-12;

class Accumulator {
public:
    void add(double num, double den) {
        if (!(den > 0.0)) return;
        const double r = num / den;
        worst_ = std::max(worst_, r);
        lowest_ = std::min(lowest_, r);
        ++count_;
    }
    RatioStats stats() const {
        return {worst_, count_ ? lowest_ : 0.0, count_};
    }

private:
    double worst_ = 0.0;
    double lowest_ = std::numeric_limits<double>::infinity();
    std::size_t count_ = 0;
};

void require_open_exponent(double q, const char* name) {
    if (!(q > 1.0) || !std::isfinite(q)) {
        throw DomainError(std::string(name) + " must lie in (1, inf)");
    }
}

double hnorm(const SpectralField& f, double s, double q) {
    return spaces::lq_norm(spectral::fractional_laplacian(f, s), q);
}

std::string params_string(std::initializer_list<std::pair<const char*, double>> items) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : items) {
        if (!first) out << ';';
        out << k << '=' << short_number(v);
        first = false;
    }
    return out.str();
}

using Evaluator = std::function<RatioStats(const Family&)>;

InequalityCheck refine(const std::string& name, const std::string& params, const FamilySpec& spec,
                       int modes, bool two_sided, const Evaluator& eval) {
    const auto coarse = eval(build_family(spec, modes));
    const auto fine = eval(build_family(spec, 2 * modes));
    InequalityCheck c;
    c.name = name;
    c.params = params;
    c.sample_count = fine.count;
    c.worst_ratio = fine.worst;
    c.fitted_C = fine.worst;
    c.coarse_worst = coarse.worst;
    c.lower_C = two_sided ? fine.lowest : 0.0;
    c.coarse_lower = two_sided ? coarse.lowest : 0.0;
    c.refinement_stability = coarse.worst > 0.0 ? fine.worst / coarse.worst : 1.0;
    bool ok = fine.count > 0 && std::isfinite(fine.worst) && c.refinement_stability <= 2.0;
    if (two_sided) ok = ok && fine.lowest > 0.0 && coarse.lowest <= 2.0 * fine.lowest;
    c.pass = ok;
    return c;
}

} // namespace

RatioStats smoothing_ratios(const std::vector<SpectralField>& family, double p, double q, double s,
                            const std::vector<double>& times) {
    require_open_exponent(p, "p");
    require_open_exponent(q, "q");
    if (!(q >= p)) throw HypothesisError("smoothing needs p <= q");
    if (!(s >= 0.0) || !std::isfinite(s)) throw HypothesisError("smoothing needs s >= 0");
    Accumulator acc;
    for (const auto& f : family) {
        const int d = f.grid().dim();
        const double den = spaces::lq_norm(f, p);
        for (double t : times) {
            if (!(t > 0.0)) throw DomainError("smoothing times must be positive");
            const double power = 0.5 * d * (1.0 / p - 1.0 / q) + 0.5 * s;
            const auto heated = spectral::heat_semigroup(f, t);
            const double num = (s == 0.0 ? spaces::lq_norm(heated, q) : hnorm(heated, s, q)) *
                               std::pow(t, power);
            acc.add(num, den);
        }
    }
    return acc.stats();
}

RatioStats product_ratios(const std::vector<SpectralField>& fs, const std::vector<SpectralField>& gs,
                          const ProductExponents& e, double s) {
    for (auto [v, n] : {std::pair{e.r, "r"}, {e.p1, "p1"}, {e.q1, "q1"}, {e.p2, "p2"}, {e.q2, "q2"}}) {
        require_open_exponent(v, n);
    }
    if (std::abs(1.0 / e.r - 1.0 / e.p1 - 1.0 / e.q1) > kRelationTol ||
        std::abs(1.0 / e.r - 1.0 / e.p2 - 1.0 / e.q2) > kRelationTol) {
        throw DomainError("product estimate needs 1/r = 1/p1 + 1/q1 = 1/p2 + 1/q2");
    }
    if (!(s >= 0.0)) throw HypothesisError("product estimate needs s >= 0");
    if (fs.size() != gs.size()) throw DimensionError("product families must have equal size");
    Accumulator acc;
    const std::size_t m = fs.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j : {i, (i + 1) % m}) {
            const auto& f = fs[i];
            const auto& g = gs[j];
            const double num = hnorm(spectral::product(f, g), s, e.r);
            const double den = hnorm(f, s, e.p1) * spaces::lq_norm(g, e.q1) +
                               spaces::lq_norm(f, e.p2) * hnorm(g, s, e.q2);
            acc.add(num, den);
            if (m == 1) break;
        }
    }
    return acc.stats();
}

RatioStats riesz_ratios(const std::vector<SpectralField>& family, double q) {
    require_open_exponent(q, "q");
    Accumulator acc;
    for (const auto& f : family) {
        const double den = spaces::lq_norm(f, q);
        double best = 0.0;
        for (int j = 0; j < f.grid().dim(); ++j) {
            best = std::max(best, spaces::lq_norm(spectral::riesz_transform(f, j), q));
        }
        acc.add(best, den);
    }
    return acc.stats();
}

RatioStats embedding_ratios(const std::vector<SpectralField>& family, double s1, double q1,
                            double s2, double q2) {
    require_open_exponent(q1, "q1");
    require_open_exponent(q2, "q2");
    Accumulator acc;
    for (const auto& f : family) {
        const int d = f.grid().dim();
        if (std::abs((s1 - d / q1) - (s2 - d / q2)) > kRelationTol) {
            throw DomainError("embedding needs s1 - d/q1 = s2 - d/q2");
        }
        if (s1 < s2) throw DomainError("embedding needs s1 >= s2");
        acc.add(hnorm(f, s2, q2), hnorm(f, s1, q1));
    }
    return acc.stats();
}

double dyadic_shell_norm(const SpectralField& f, double s, double q) {
    const auto& g = f.grid();
    std::map<int, std::vector<std::size_t>> shells;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k = g.k_norm(i);
        if (k == 0.0 || f[i] == std::complex<double>{}) continue;
        shells[static_cast<int>(std::floor(std::log2(k)))].push_back(i);
    }
    double best = 0.0;
    for (const auto& [j, idx] : shells) {
        SpectralField part(g);
        for (auto i : idx) part[i] = f[i];
        best = std::max(best, std::pow(2.0, j * s) * spaces::lq_norm(part, q));
    }
    return best;
}

RatioStats besov_ratios(const std::vector<SpectralField>& family, double s, double q) {
    require_open_exponent(q, "q");
    if (!(s < 0.0)) throw DomainError("Besov equivalence needs s < 0");
    Accumulator acc;
    for (const auto& f : family) {
        const auto spec = spaces::BesovSpec::for_grid(f.grid(), s, q);
        acc.add(spaces::besov_norm(f, spec), dyadic_shell_norm(f, s, q));
    }
    return acc.stats();
}

InequalityCheck check_smoothing(const FamilySpec& family, int modes, double p, double q, double s,
                                const std::vector<double>& times) {
    return refine("smoothing", params_string({{"p", p}, {"q", q}, {"s", s}}), family, modes, false,
                  [&](const Family& f) { return smoothing_ratios(f.members, p, q, s, times); });
}

InequalityCheck check_product(const FamilySpec& family, int modes, const ProductExponents& e,
                              double s) {
    return refine("product",
                  params_string({{"s", s}, {"r", e.r}, {"p1", e.p1}, {"q1", e.q1}, {"p2", e.p2},
                                 {"q2", e.q2}}),
                  family, modes, false,
                  [&](const Family& f) { return product_ratios(f.members, f.members, e, s); });
}

InequalityCheck check_riesz_bound(const FamilySpec& family, int modes, double q) {
    return refine("riesz", params_string({{"q", q}}), family, modes, false,
                  [&](const Family& f) { return riesz_ratios(f.members, q); });
}

InequalityCheck check_embedding(const FamilySpec& family, int modes, double s1, double q1,
                                double s2, double q2) {
    return refine("embedding", params_string({{"s1", s1}, {"q1", q1}, {"s2", s2}, {"q2", q2}}),
                  family, modes, false,
                  [&](const Family& f) { return embedding_ratios(f.members, s1, q1, s2, q2); });
}

InequalityCheck check_besov_equivalence(const FamilySpec& family, int modes, double s, double q) {
    if (!(s < 0.0)) throw DomainError("Besov equivalence needs s < 0");
    return refine("besov_equivalence", params_string({{"s", s}, {"q", q}}), family, modes, true,
                  [&](const Family& f) { return besov_ratios(f.members, s, q); });
}

void write_check_header(std::ostream& out) {
    out << "name,params,sample_count,worst_ratio,fitted_C,lower_C,stability,verdict\n";
}

void write_check_row(std::ostream& out, const InequalityCheck& c) {
    out << c.name << ',' << c.params << ',' << c.sample_count << ',' << format_double(c.worst_ratio)
        << ',' << format_double(c.fitted_C) << ',' << format_double(c.lower_C) << ','
        << format_double(c.refinement_stability) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
}

} // namespace mildns::verify
