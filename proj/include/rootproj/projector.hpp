#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "catalog.hpp"
#include "linalg.hpp"

namespace rootproj {

struct ProjectedSet {
    SystemLabel label;
    std::vector<int> theta;              // 0-based Δ indices, sorted
    std::vector<Vec> sigma_theta;        // deduplicated, nonzero, sorted
    std::vector<Vec> delta_theta;        // projections of Δ∖Θ in Δ order
    std::map<Vec, std::vector<Vec>> fibers;
    size_t d = 0;
};

[[nodiscard]] inline ProjectedSet project_system(const RootSystemData& sys,
                                                 const std::vector<int>& theta) {
    std::set<int> idx(theta.begin(), theta.end());
    for (int i : idx)
        if (i < 0 || (size_t)i >= sys.simple.size())
            throw std::out_of_range("theta index out of range");
    if (idx.size() == sys.simple.size())
        throw std::invalid_argument("projection target is zero space");

    ProjectedSet ps;
    ps.label = sys.label;
    ps.theta.assign(idx.begin(), idx.end());
    std::vector<Vec> basis;
    for (int i : ps.theta) basis.push_back(sys.simple[i]);

    std::set<Vec> seen;
    for (const auto& r : sys.roots) {
        Vec p = project_complement(r, basis);
        if (is_zero(p)) continue;
        ps.fibers[p].push_back(r);
        seen.insert(std::move(p));
    }
    ps.sigma_theta.assign(seen.begin(), seen.end());
    for (size_t i = 0; i < sys.simple.size(); ++i)
        if (!idx.count((int)i))
            ps.delta_theta.push_back(project_complement(sys.simple[i], basis));
    ps.d = ps.delta_theta.size();
    return ps;
}

struct DecompositionResult {
    bool ok = false;
    std::vector<Rational> coefficients;  // over delta_theta
    std::string violation;               // nonempty when !ok
};

/// Expansion of v over Δ_Θ. Integer, same-sign coefficients are
/// expected; anything else comes back as a structured violation, not a throw.
[[nodiscard]] inline DecompositionResult integral_decomposition(const Vec& v,
                                                                const ProjectedSet& ps) {
    DecompositionResult res;
    std::vector<Rational> c;
    try {
        c = coordinates(v, ps.delta_theta);
    } catch (const std::invalid_argument& e) {
        res.violation = e.what();
        return res;
    }
    res.coefficients = c;
    bool pos = false, neg = false;
    for (const auto& x : c) {
        if (!x.is_integer()) {
            res.violation = "non-integral coefficient " + x.str();
            return res;
        }
        if (x.sign() > 0) pos = true;
        if (x.sign() < 0) neg = true;
    }
    if (pos && neg) {
        res.violation = "mixed-sign coefficients";
        return res;
    }
    res.ok = true;
    return res;
}

/// Projection must be constant on W_Θ orbits: s_α with α ∈ Θ moves a root
/// within a fiber.
[[nodiscard]] inline bool weyl_theta_invariance_check(const RootSystemData& sys,
                                                      const std::vector<int>& theta) {
    std::vector<Vec> basis;
    for (int i : theta) basis.push_back(sys.simple[i]);
    for (const auto& a : basis)
        for (const auto& r : sys.roots)
            if (project_complement(r, basis) != project_complement(reflect(r, a), basis))
                return false;
    return true;
}

}  // namespace rootproj
