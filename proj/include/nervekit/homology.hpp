/**
 * Normalized chains, integer homology, connected components and
 * quasi-isomorphism checks through the mapping cone.
 */
#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "simplicial.hpp"
#include "smith.hpp"

namespace nervekit {

inline constexpr Index no_index = static_cast<Index>(-1);

/// boundaries[n] is ∂_n: C_n -> C_{n-1} for n = 1..top; boundaries[0] is empty.
struct ChainComplex {
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> boundaries;

    int top() const { return static_cast<int>(ranks.size()) - 1; }
};

/// Basis of the normalized chains: the nondegenerate simplices of each level.
struct NormalizedBasis {
    std::vector<std::vector<Index>> simplices;  // [n][k] -> simplex
    std::vector<std::vector<Index>> position;   // [n][s] -> k, or npos
};

inline NormalizedBasis normalized_basis(const SimplicialSet& k)
{
    NormalizedBasis b;
    b.simplices.resize(k.cap() + 1);
    b.position.resize(k.cap() + 1);
    for (int n = 0; n <= k.cap(); ++n) {
        b.position[n].assign(k.size(n), no_index);
        for (Index s = 0; s < k.size(n); ++s)
            if (!k.is_degenerate(n, s)) {
                b.position[n][s] = b.simplices[n].size();
                b.simplices[n].push_back(s);
            }
    }
    return b;
}

inline ChainComplex normalized_chains(const SimplicialSet& k)
{
    auto basis = normalized_basis(k);
    ChainComplex c;
    for (int n = 0; n <= k.cap(); ++n)
        c.ranks.push_back(basis.simplices[n].size());
    c.boundaries.emplace_back();
    for (int n = 1; n <= k.cap(); ++n) {
        SparseMatrix d(c.ranks[n - 1], c.ranks[n]);
        for (std::size_t col = 0; col < c.ranks[n]; ++col) {
            Index s = basis.simplices[n][col];
            for (int i = 0; i <= n; ++i) {
                Index f = basis.position[n - 1][k.face(n, i, s)];
                if (f != no_index)
                    d.add(f, col, i % 2 == 0 ? 1 : -1);
            }
        }
        c.boundaries.push_back(std::move(d));
    }
    return c;
}

/// Product of sparse matrices a·b.
inline SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    SparseMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (const auto& [k, v] : a.entries[i])
            for (const auto& [j, w] : b.entries[k])
                out.add(i, j, v * w);
    return out;
}

/// Degrees n >= 2 where ∂_{n-1}∂_n is nonzero.
inline std::vector<int> boundary_failures(const ChainComplex& c)
{
    std::vector<int> out;
    for (int n = 2; n <= c.top(); ++n) {
        auto p = multiply(c.boundaries[n - 1], c.boundaries[n]);
        for (const auto& row : p.entries)
            if (!row.empty()) {
                out.push_back(n);
                break;
            }
    }
    return out;
}

struct DegreeHomology {
    std::size_t betti = 0;
    std::vector<BigInt> torsion;

    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

inline std::string to_string(const DegreeHomology& h)
{
    std::vector<std::string> parts;
    if (h.betti == 1)
        parts.push_back("Z");
    else if (h.betti > 1)
        parts.push_back("Z^" + std::to_string(h.betti));
    for (const auto& t : h.torsion)
        parts.push_back("Z/" + t.str());
    if (parts.empty())
        return "0";
    std::string s = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k)
        s += " + " + parts[k];
    return s;
}

struct HomologyReport {
    std::vector<DegreeHomology> degrees;  // 0..top
    std::size_t components = 0;
    bool truncation_warning = false;
    std::string note;

    std::string text() const
    {
        std::ostringstream os;
        for (std::size_t n = 0; n < degrees.size(); ++n)
            os << "H_" << n << " = " << to_string(degrees[n]) << "\n";
        os << "pi_0: " << components << " component" << (components == 1 ? "" : "s") << "\n";
        if (!note.empty())
            os << "note: " << note << "\n";
        return os.str();
    }
};

/// Homology in degrees 0..top, which needs ∂ up to top+1.
inline std::vector<DegreeHomology> homology_groups(const ChainComplex& c, int top)
{
    if (top + 1 > c.top())
        throw Error(Errc::CapTooSmall, "homology in degree " + std::to_string(top) + " needs the boundary in degree " +
                                           std::to_string(top + 1));
    std::vector<InvariantFactors> f(top + 2);
    for (int n = 1; n <= top + 1; ++n)
        f[n] = invariant_factors(c.boundaries[n]);
    std::vector<DegreeHomology> out;
    for (int n = 0; n <= top; ++n) {
        DegreeHomology h;
        std::size_t rank_in = n == 0 ? 0 : f[n].rank;
        h.betti = c.ranks[n] - rank_in - f[n + 1].rank;
        h.torsion = f[n + 1].torsion;
        out.push_back(std::move(h));
    }
    return out;
}

/// Component label (least vertex of the component) for every vertex.
inline std::vector<Index> pi0(const SimplicialSet& k)
{
    std::vector<Index> parent(k.size(0));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index e = 0; k.cap() >= 1 && e < k.size(1); ++e) {
        Index a = find(k.face(1, 0, e)), b = find(k.face(1, 1, e));
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    for (Index x = 0; x < parent.size(); ++x)
        parent[x] = find(x);
    return parent;
}

inline std::size_t pi0_count(const SimplicialSet& k)
{
    auto p = pi0(k);
    std::size_t n = 0;
    for (Index x = 0; x < p.size(); ++x)
        n += p[x] == x;
    return n;
}

/// Homology of K in degrees 0..cap-1, the range fixed by the truncation.
inline HomologyReport homology(const SimplicialSet& k, bool truncation_warning = false)
{
    if (k.cap() < 1)
        throw Error(Errc::CapTooSmall, "homology needs cap >= 1");
    HomologyReport r;
    r.degrees = homology_groups(normalized_chains(k), k.cap() - 1);
    r.components = pi0_count(k);
    r.truncation_warning = truncation_warning;
    if (truncation_warning)
        r.note = "nondegenerate simplices continue above dimension " + std::to_string(k.cap()) +
                 "; degrees 0.." + std::to_string(k.cap() - 1) + " are computed from complete data";
    return r;
}

inline HomologyReport homology(const ChainComplex& c)
{
    if (c.top() < 1)
        throw Error(Errc::CapTooSmall, "homology needs boundaries up to degree 1");
    HomologyReport r;
    r.degrees = homology_groups(c, c.top() - 1);
    r.components = r.degrees.front().betti;
    return r;
}

/// Normalized chain map of f in degree n: rows index target basis, columns source basis.
inline SparseMatrix chain_map_matrix(const SimplicialMap& f, const NormalizedBasis& a, const NormalizedBasis& b, int n)
{
    SparseMatrix m(b.simplices[n].size(), a.simplices[n].size());
    for (std::size_t col = 0; col < a.simplices[n].size(); ++col) {
        Index image = f.levels[n][a.simplices[n][col]];
        Index row = b.position[n][image];
        if (row != no_index)
            m.add(row, col, 1);
    }
    return m;
}

/// Mapping cone of f up to degree `top`: C_n = A_{n-1} ⊕ B_n, ∂(a, b) = (-∂a, f a + ∂b).
inline ChainComplex mapping_cone(const SimplicialMap& f, int top)
{
    const SimplicialSet& ka = *f.source;
    const SimplicialSet& kb = *f.target;
    if (top > ka.cap() + 1 || top > kb.cap())
        throw Error(Errc::CapTooSmall, "cone degree exceeds the caps");
    auto ba = normalized_basis(ka), bb = normalized_basis(kb);
    auto ca = normalized_chains(ka), cb = normalized_chains(kb);
    auto a_rank = [&](int n) -> std::size_t { return n < 0 ? 0 : ca.ranks[n]; };
    ChainComplex c;
    for (int n = 0; n <= top; ++n)
        c.ranks.push_back(a_rank(n - 1) + cb.ranks[n]);
    c.boundaries.emplace_back();
    for (int n = 1; n <= top; ++n) {
        SparseMatrix d(c.ranks[n - 1], c.ranks[n]);
        const std::size_t a_lo = a_rank(n - 2);  // offset of B_{n-1} in C_{n-1}
        const std::size_t a_hi = a_rank(n - 1);  // offset of B_n in C_n
        if (n >= 2)
            for (std::size_t i = 0; i < ca.boundaries[n - 1].rows; ++i)
                for (const auto& [j, v] : ca.boundaries[n - 1].entries[i])
                    d.add(i, j, -v);
        auto fm = chain_map_matrix(f, ba, bb, n - 1);
        for (std::size_t i = 0; i < fm.rows; ++i)
            for (const auto& [j, v] : fm.entries[i])
                d.add(a_lo + i, j, v);
        for (std::size_t i = 0; i < cb.boundaries[n].rows; ++i)
            for (const auto& [j, v] : cb.boundaries[n].entries[i])
                d.add(a_lo + i, a_hi + j, v);
        c.boundaries.push_back(std::move(d));
    }
    return c;
}

struct QuasiIsoReport {
    int max_degree = -1;                 // degrees 0..max_degree were checked
    bool pi0_bijective = false;
    std::vector<DegreeHomology> cone;    // cone homology per degree
    bool top_degree_iso = false;         // H_top(A) ≅ H_top(B) as groups
    bool verdict = false;
    int failing_degree = -1;
    std::string detail;

    std::string text() const
    {
        std::ostringstream os;
        if (verdict)
            os << "quasi-iso in range [0," << max_degree << "]";
        else
            os << "not a quasi-iso: " << detail;
        return os.str();
    }
};

/**
 * Degrees 0..cap-1: π₀ bijection, cone homology zero in each degree, and
 * H_{cap-1}(A) ≅ H_{cap-1}(B). Cone acyclicity through cap-1 makes the top
 * map onto; a surjection between isomorphic finitely generated abelian
 * groups is an isomorphism.
 */
inline QuasiIsoReport quasi_iso_check(const SimplicialMap& f, int cap = -1)
{
    check_smap(f);
    const int limit = std::min(f.source->cap(), f.target->cap());
    if (cap < 0)
        cap = limit;
    if (cap < 1 || cap > limit)
        throw Error(Errc::CapTooSmall, "quasi-iso check needs 1 <= cap <= " + std::to_string(limit));
    QuasiIsoReport r;
    r.max_degree = cap - 1;

    auto pa = pi0(*f.source), pb = pi0(*f.target);
    std::vector<Index> hit(pb.size(), no_index);
    r.pi0_bijective = true;
    for (Index x = 0; x < pa.size() && r.pi0_bijective; ++x) {
        Index comp_b = pb[f.levels[0][x]];
        if (hit[comp_b] == no_index)
            hit[comp_b] = pa[x];
        else if (hit[comp_b] != pa[x])
            r.pi0_bijective = false;
    }
    for (Index y = 0; y < pb.size() && r.pi0_bijective; ++y)
        if (pb[y] == y && hit[y] == no_index)
            r.pi0_bijective = false;
    if (!r.pi0_bijective) {
        r.failing_degree = 0;
        r.detail = "map on connected components is not a bijection";
    }

    auto cone = mapping_cone(f, cap);
    r.cone = homology_groups(cone, cap - 1);
    for (int n = 0; n < cap; ++n)
        if (!(r.cone[n] == DegreeHomology{}) && r.failing_degree < 0) {
            r.failing_degree = n;
            r.detail = "mapping cone has H_" + std::to_string(n) + " = " + to_string(r.cone[n]);
        }
    auto ha = homology_groups(normalized_chains(*f.source), cap - 1);
    auto hb = homology_groups(normalized_chains(*f.target), cap - 1);
    r.top_degree_iso = ha[cap - 1] == hb[cap - 1];
    if (!r.top_degree_iso && r.failing_degree < 0) {
        r.failing_degree = cap - 1;
        r.detail = "H_" + std::to_string(cap - 1) + " differs: " + to_string(ha[cap - 1]) + " vs " +
                   to_string(hb[cap - 1]);
    }
    r.verdict = r.failing_degree < 0;
    return r;
}

}  // namespace nervekit
