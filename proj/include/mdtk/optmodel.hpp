#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mdtk/model.hpp"

namespace mdtk {

// a rational function of the optimized coordinates (u, v)
struct RatMap {
    BiPoly<Rat> num{"u", "v"}, den{"u", "v"};
};

// Low-degree plane model of X_1(m,mn) with the birational change of
// coordinates back to the raw model: q = q(u,v), t = t(u,v)
struct OptimizedModel {
    Label label;
    BiPoly<Rat> G{"u", "v"};
    RatMap q, t;
    std::string source;
    bool has_maps() const { return !q.num.zero() && !t.num.zero(); }
};

struct VerificationReport {
    bool substitution_ok = false;  // maps kill the raw polynomial mod G
    bool genus_checked = false;    // filled by the function-field layer
    bool genus_ok = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// numerator of F(q(u,v), t(u,v)) after clearing both denominators
inline BiPoly<Rat> substitute_map(const BiPoly<Rat>& F, const RatMap& q,
                                  const RatMap& t) {
    int dq = F.deg_x(), dt = F.deg_y();
    auto powers = [&](const BiPoly<Rat>& b, int top) {
        std::vector<BiPoly<Rat>> pw(static_cast<size_t>(top) + 1, BiPoly<Rat>("u", "v"));
        pw[0].add_term(0, 0, Rat(1));
        for (int i = 1; i <= top; ++i) pw[static_cast<size_t>(i)] = pw[static_cast<size_t>(i - 1)] * b;
        return pw;
    };
    auto qn = powers(q.num, dq), qd = powers(q.den, dq);
    auto tn = powers(t.num, dt), td = powers(t.den, dt);
    BiPoly<Rat> out("u", "v");
    for (auto& [e, c] : F.c) {
        BiPoly<Rat> term = qn[static_cast<size_t>(e.first)] *
                           qd[static_cast<size_t>(dq - e.first)] *
                           tn[static_cast<size_t>(e.second)] *
                           td[static_cast<size_t>(dt - e.second)];
        out = out + term * c;
    }
    return out;
}

// the (a)-check of the model verification: substituting the maps into the
// raw polynomial yields a multiple of the optimized polynomial
inline VerificationReport verify_model(const RawModel& raw, const OptimizedModel& opt) {
    VerificationReport rep;
    if (!(raw.label == opt.label)) {
        rep.failures.push_back("label mismatch");
        return rep;
    }
    if (!opt.has_maps()) {
        rep.failures.push_back("no coordinate maps");
        return rep;
    }
    BiPoly<Rat> N = substitute_map(raw.F, opt.q, opt.t);
    if (N.zero()) {
        // identically zero only if a denominator vanishes on the raw model;
        // treat as failure
        rep.failures.push_back("substitution degenerates");
        return rep;
    }
    auto [cof, k] = remove_known_factor(N, opt.G);
    rep.substitution_ok = k >= 1;
    if (!rep.substitution_ok) rep.failures.push_back("substitution does not vanish mod G");
    return rep;
}

// --- model files: polynomial text plus a JSON sidecar ---

inline void save_optimized(const OptimizedModel& M, const std::string& stem) {
    {
        std::ofstream out(stem + ".txt");
        out << bipoly_to_string(M.G) << "\n";
    }
    nlohmann::json j;
    j["label"] = {M.label.m, M.label.n};
    j["field"] = "Q";
    j["vars"] = {M.G.vx, M.G.vy};
    if (M.has_maps()) {
        j["maps"]["q"]["num"] = bipoly_to_string(M.q.num);
        j["maps"]["q"]["den"] = bipoly_to_string(M.q.den);
        j["maps"]["t"]["num"] = bipoly_to_string(M.t.num);
        j["maps"]["t"]["den"] = bipoly_to_string(M.t.den);
    }
    if (!M.source.empty()) j["source"] = M.source;
    std::ofstream side(stem + ".json");
    side << j.dump(2) << "\n";
}

inline OptimizedModel load_optimized(const std::string& stem) {
    std::ifstream side(stem + ".json");
    if (!side) throw std::runtime_error("load_optimized: missing sidecar " + stem + ".json");
    nlohmann::json j;
    side >> j;
    OptimizedModel M;
    M.label = Label{j["label"][0].get<int>(), j["label"][1].get<int>()};
    std::string vx = j["vars"][0].get<std::string>(), vy = j["vars"][1].get<std::string>();
    std::ifstream txt(stem + ".txt");
    if (!txt) throw std::runtime_error("load_optimized: missing polynomial " + stem + ".txt");
    std::stringstream ss;
    ss << txt.rdbuf();
    std::string body = ss.str();
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    M.G = bipoly_parse(body, vx, vy);
    if (j.contains("maps")) {
        auto& m = j["maps"];
        M.q.num = bipoly_parse(m["q"]["num"].get<std::string>(), vx, vy);
        M.q.den = bipoly_parse(m["q"]["den"].get<std::string>(), vx, vy);
        M.t.num = bipoly_parse(m["t"]["num"].get<std::string>(), vx, vy);
        M.t.den = bipoly_parse(m["t"]["den"].get<std::string>(), vx, vy);
    }
    if (j.contains("source")) M.source = j["source"].get<std::string>();
    return M;
}

}  // namespace mdtk
