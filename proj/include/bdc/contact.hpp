#pragma once
// The contact class theta^0 (x) EH in the equivariant cohomology, its tower profile, the
// forgetful image in HF-hat and the vanishing predictor.

#include "bdc/pipeline.hpp"

#include <gmpxx.h>

namespace bdc {

enum class Verdict { NonvanishingCertified, VanishingCertified, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NonvanishingCertified: return "NonvanishingCertified";
        case Verdict::VanishingCertified: return "VanishingCertified";
        default: return "Inconclusive";
    }
}

struct D3Data {
    int sigma = 0, sl = 0;
    mpq_class d3;
};

// (3 sigma - 2 sl)/4 - 1; the constant is pinned by the transverse unknot (d3 = -1/2)
inline mpq_class d3(int sigma, int sl) {
    mpq_class r(3 * sigma - 2 * sl, 4);
    r.canonicalize();
    return r - 1;
}

inline Verdict vnv_predict(const ClassProfile& p, int v_tau) {
    if (!p.nonzero || !p.delta) return Verdict::Inconclusive;
    if (*p.delta == 0) return Verdict::NonvanishingCertified;
    if (*p.delta > v_tau) return Verdict::VanishingCertified;
    return Verdict::Inconclusive;
}

namespace detail {

inline Bits unit(std::size_t n, int x) {
    Bits b(n);
    b.set(x);
    return b;
}

// cochain differential delta = d^T restricted to the given generators (all must be closed
// under d and tau); returns delta(y) for each y in the list, in list coordinates
inline std::vector<Bits> coboundaries(const FloerComplex& c, const std::vector<int>& gens) {
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < gens.size(); ++i) pos[gens[i]] = i;
    std::vector<Bits> out(gens.size(), Bits(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (int y : c.d[gens[i]]) out[pos.at(y)].set(i);  // x = gens[i] has y in d(x), so x in delta(y)
    return out;
}

inline bool in_span(const std::vector<Bits>& span, const Bits& v) {
    auto with = span;
    with.push_back(v);
    return f2_rank(with) == f2_rank(span);
}

}  // namespace detail

// Is [EH] nonzero in HF-hat (cohomology of d^T)?
inline bool forget_c(const FloerComplex& c, int eh) {
    std::vector<int> gens;
    for (std::size_t x = 0; x < c.size(); ++x)
        if (c.gens[x].spinc == c.gens[eh].spinc) gens.push_back(static_cast<int>(x));
    const auto pos = std::find(gens.begin(), gens.end(), eh) - gens.begin();
    return !detail::in_span(detail::coboundaries(c, gens), detail::unit(gens.size(), static_cast<int>(pos)));
}

// [EH] is not of the form a + tau a for any cohomology class a
inline bool nonvanishing_obstruction(const FloerComplex& c, int eh) {
    std::vector<int> gens;
    for (std::size_t x = 0; x < c.size(); ++x)
        if (c.gens[x].spinc == c.gens[eh].spinc) gens.push_back(static_cast<int>(x));
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < gens.size(); ++i) pos[gens[i]] = i;
    const std::size_t n = gens.size();
    auto cob = detail::coboundaries(c, gens);
    // delta(e_i) for the kernel: delta(e_y) = cob[y]
    auto ker = detail::kernel_basis(cob, n);
    std::vector<Bits> span = cob;
    for (auto& z : ker) {
        Bits v = z;
        for (auto i = z.find_first(); i != Bits::npos; i = z.find_next(i)) v.flip(pos.at(c.gens[gens[i]].tau));
        span.push_back(v);
    }
    return !detail::in_span(span, detail::unit(n, static_cast<int>(pos.at(eh))));
}

// Module up to relabelling Spin^c classes and shifting gradings: per sector, towers relative to
// the lowest tower bottom, sectors sorted.
struct ModuleSignature {
    using Sector = std::pair<std::vector<int>, std::vector<std::pair<int, int>>>;  // free bottoms, torsion (bottom, length)
    std::vector<Sector> sectors;
    bool operator==(const ModuleSignature&) const = default;
};

inline ModuleSignature module_signature(const ThetaModule& m) {
    std::map<int, ModuleSignature::Sector> by;
    std::map<int, int> lo;
    auto low = [&](int s, int b) { lo[s] = lo.count(s) ? std::min(lo[s], b) : b; };
    for (auto& f : m.free) low(f.spinc, f.bottom);
    for (auto& t : m.torsion) low(t.spinc, t.bottom);
    for (auto& f : m.free) by[f.spinc].first.push_back(f.bottom - lo[f.spinc]);
    for (auto& t : m.torsion) by[t.spinc].second.push_back({t.bottom - lo[t.spinc], t.length});
    ModuleSignature sig;
    for (auto& [k, v] : by) {
        std::sort(v.first.begin(), v.first.end());
        std::sort(v.second.begin(), v.second.end());
        sig.sectors.push_back(v);
    }
    std::sort(sig.sectors.begin(), sig.sectors.end());
    return sig;
}

// the isomorphism-invariant part of a class profile
struct InvariantProfile {
    bool nonzero = false;
    int divisibility = -1;
    bool theta_torsion = true;
    std::optional<int> delta;
    bool operator==(const InvariantProfile&) const = default;
};

inline InvariantProfile invariant(const ClassProfile& p) {
    return {p.nonzero, p.divisibility, p.theta_torsion, p.delta};
}

struct ContactResult {
    bool graded = true;  // EH lives in an integer-graded Spin^c class
    GradedPart part;
    ThetaComplex theta;
    ThetaModule module;
    ClassProfile profile;
    std::optional<int> v_tau;
    bool forget = false;
    bool obstruction = false;
    D3Data d3;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> warnings;
    std::vector<std::string> violations;  // theorem checks that failed
};

inline ClassProfile profile(const ContactResult& r) { return r.profile; }

inline ContactResult contact_class(const Pipeline& p) {
    ContactResult r;
    const FloerComplex& c = p.floer.complex;
    const int eh = p.eh;
    if (c.gens[eh].tau != eh) r.violations.push_back("EH is not tau-fixed");
    for (std::size_t x = 0; x < c.size(); ++x)
        for (int y : c.d[x])
            if (y == eh) r.violations.push_back("EH is not a cocycle");
    r.forget = forget_c(c, eh);
    r.obstruction = nonvanishing_obstruction(c, eh);
    r.d3 = {p.classical.sigma, p.classical.self_linking, d3(p.classical.sigma, p.classical.self_linking)};
    if (p.classical.components > 1) r.warnings.push_back("link closure: knot-only statements not evaluated");

    r.part = integer_graded_part(c);
    r.theta = build_theta_complex(r.part.complex);
    r.module = theta_homology(r.theta);
    auto it = r.part.new_index.find(eh);
    if (it == r.part.new_index.end()) {
        r.graded = false;
        r.warnings.push_back("contact class lies in a non-torsion Spin^c class; tower data omitted");
        return r;
    }
    const int e = it->second;
    r.profile = class_profile(r.theta, detail::unit(r.theta.size(), e), r.theta.gr[e]);
    if (r.profile.delta) r.v_tau = v_tau(r.module, r.profile.sector);
    r.verdict = vnv_predict(r.profile, r.v_tau.value_or(0));

    // theorem checks
    if (!r.profile.nonzero || r.profile.theta_torsion) r.violations.push_back("contact class is theta-torsion");
    if (r.profile.delta && *r.profile.delta < r.profile.divisibility) r.violations.push_back("delta below divisibility");
    if (r.profile.divisibility > 0 && r.forget) r.violations.push_back("theta-divisible class with nonzero image");
    if (r.verdict == Verdict::NonvanishingCertified && !r.forget) r.violations.push_back("nonvanishing verdict but c = 0");
    if (r.verdict == Verdict::VanishingCertified && r.forget) r.violations.push_back("vanishing verdict but c != 0");
    if (r.profile.delta == 0 && !r.obstruction) r.violations.push_back("delta = 0 but c = a + tau a");
    if (p.classical.components == 1 && r.module.localized_rank() != 1)
        r.violations.push_back("knot with localized rank != 1");
    return r;
}

}  // namespace bdc
