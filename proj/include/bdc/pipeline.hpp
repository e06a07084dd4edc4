#pragma once
// braid word -> arc system -> bridge diagram -> nice involutive cover -> Floer complex

#include "bdc/floer.hpp"
#include "bdc/theta.hpp"

#include <memory>

namespace bdc {

struct PipelineOptions {
    int budget = 200;       // finger moves allowed per attempt
    bool fallback = true;   // retry other base punctures / cyclic rotations when stuck
};

struct Pipeline {
    BraidWord input;
    BraidWord word;  // representative actually drawn (a cyclic rotation of input)
    int base = 1;
    int rotation = 0;
    ClassicalInvariants classical;
    std::shared_ptr<BridgeDiagram> bridge;
    HeegaardDiagram cover;  // refers to bridge->map
    int nicify_moves = 0;
    AdmissibilityResult admissibility;
    FloerData floer;
    int eh = -1;  // generator index
};

namespace detail {

inline void finish_pipeline(Pipeline& p) {
    p.bridge->map.trace_faces();
    p.cover = branched_double_cover(*p.bridge);
    if (auto v = validate(p.cover); !v.empty()) throw std::logic_error("cover invalid: " + v.front());
    p.admissibility = weak_admissibility(p.cover);
    p.floer = differential(p.cover);
    p.eh = p.floer.gens.index.at(eh_tuple(*p.bridge, p.cover));
}

inline bool try_bridge(Pipeline& p, BridgeDiagram bd, int budget, std::string& err) {
    try {
        p.nicify_moves = nicify(bd, budget);
    } catch (const std::runtime_error& e) {
        err = e.what();
        return false;
    }
    p.bridge = std::make_shared<BridgeDiagram>(std::move(bd));
    finish_pipeline(p);
    return true;
}

}  // namespace detail

// Arc-system entry point: the given half-arc basis is tried first.
inline Pipeline run_pipeline(const ArcSystem& s, const BraidWord& w, const PipelineOptions& opt = {}) {
    check_word(w);
    if (w.strands != s.n) throw InputError("strand count does not match puncture count");
    Pipeline p;
    p.input = p.word = w;
    p.base = s.base;
    p.classical = classical_invariants(w);
    std::string err;
    if (detail::try_bridge(p, to_bridge_diagram(s, w), opt.budget, err)) return p;
    if (opt.fallback) {
        const int L = std::max<int>(1, static_cast<int>(w.letters.size()));
        for (int rot = 0; rot < L; ++rot)
            for (int base = 1; base <= w.strands; ++base) {
                if (rot == 0 && base == s.base) continue;
                BraidWord r = w;
                if (!r.letters.empty()) std::rotate(r.letters.begin(), r.letters.begin() + rot, r.letters.end());
                p.word = r;
                p.base = base;
                p.rotation = rot;
                if (detail::try_bridge(p, build_bridge(w.strands, base, r), opt.budget, err)) return p;
            }
    }
    throw std::runtime_error(err);
}

inline Pipeline run_pipeline(const BraidWord& w, const PipelineOptions& opt = {}) {
    return run_pipeline(standard_half_arc_basis(w.strands, 1), w, opt);
}

// Generators whose Spin^c class (and its tau image) is torsion, i.e. carries an integer grading.
struct GradedPart {
    FloerComplex complex;
    std::vector<int> old_index;           // new -> old
    std::map<int, int> new_index;         // old -> new
};

inline GradedPart integer_graded_part(const FloerComplex& c) {
    GradedPart g;
    for (std::size_t x = 0; x < c.size(); ++x) {
        const auto& gi = c.gens[x];
        if (c.period_of(gi.spinc) > 0 || c.period_of(c.gens[gi.tau].spinc) > 0) continue;
        g.new_index[static_cast<int>(x)] = static_cast<int>(g.old_index.size());
        g.old_index.push_back(static_cast<int>(x));
    }
    for (int x : g.old_index) {
        GenInfo gi = c.gens[x];
        gi.tau = g.new_index.at(gi.tau);
        g.complex.gens.push_back(gi);
        std::vector<int> row;
        for (int y : c.d[x]) row.push_back(g.new_index.at(y));
        g.complex.d.push_back(row);
    }
    return g;
}

}  // namespace bdc
