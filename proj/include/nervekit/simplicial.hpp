/**
 * Truncated simplicial and bisimplicial sets stored as explicit face and
 * degeneracy tables, plus simplicial maps between them.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace nervekit {

using Index = std::size_t;
using Table = std::vector<Index>;

/**
 * Levels 0..cap. faces[n][i] maps level n to level n-1 (n >= 1, 0 <= i <= n);
 * degeneracies[n][i] maps level n to level n+1 (n < cap, 0 <= i <= n).
 * Degeneracy flags are derived from the degeneracy tables: a simplex is
 * degenerate iff it lies in the image of some s_i.
 */
class SimplicialSet {
public:
    struct Level {
        Index count = 0;
        std::vector<Table> faces;
        std::vector<Table> degeneracies;
        std::vector<std::string> labels;
    };

    SimplicialSet() = default;

    explicit SimplicialSet(std::vector<Level> levels) : levels_(std::move(levels))
    {
        if (levels_.empty())
            throw Error(Errc::CapTooSmall, "a simplicial set needs at least level 0");
        const int c = cap();
        for (int n = 0; n <= c; ++n) {
            const Level& l = levels_[n];
            if (l.faces.size() != static_cast<std::size_t>(n == 0 ? 0 : n + 1))
                throw Error(Errc::NotSimplicial, "level " + std::to_string(n) + " has the wrong number of faces");
            if (l.degeneracies.size() != static_cast<std::size_t>(n < c ? n + 1 : 0))
                throw Error(Errc::NotSimplicial, "level " + std::to_string(n) + " has the wrong number of degeneracies");
            for (const auto& t : l.faces) {
                if (t.size() != l.count)
                    throw Error(Errc::NotSimplicial, "face table size at level " + std::to_string(n));
                for (Index v : t)
                    if (v >= levels_[n - 1].count)
                        throw Error(Errc::NotSimplicial, "face out of range at level " + std::to_string(n));
            }
            for (const auto& t : l.degeneracies) {
                if (t.size() != l.count)
                    throw Error(Errc::NotSimplicial, "degeneracy table size at level " + std::to_string(n));
                for (Index v : t)
                    if (v >= levels_[n + 1].count)
                        throw Error(Errc::NotSimplicial, "degeneracy out of range at level " + std::to_string(n));
            }
            if (!l.labels.empty() && l.labels.size() != l.count)
                throw Error(Errc::NotSimplicial, "label count at level " + std::to_string(n));
        }
        degenerate_.resize(levels_.size());
        for (int n = 0; n <= c; ++n)
            degenerate_[n].assign(levels_[n].count, 0);
        for (int n = 0; n < c; ++n)
            for (const auto& t : levels_[n].degeneracies)
                for (Index v : t)
                    degenerate_[n + 1][v] = 1;
    }

    int cap() const { return static_cast<int>(levels_.size()) - 1; }
    Index size(int n) const { return levels_[n].count; }
    Index face(int n, int i, Index s) const { return levels_[n].faces[i][s]; }
    Index degeneracy(int n, int i, Index s) const { return levels_[n].degeneracies[i][s]; }
    const Table& face_table(int n, int i) const { return levels_[n].faces[i]; }
    const Table& degeneracy_table(int n, int i) const { return levels_[n].degeneracies[i]; }
    bool is_degenerate(int n, Index s) const { return degenerate_[n][s] != 0; }
    bool has_labels(int n) const { return !levels_[n].labels.empty(); }
    std::string label(int n, Index s) const
    {
        if (levels_[n].labels.empty())
            return std::to_string(s);
        return levels_[n].labels[s];
    }
    const Level& level(int n) const { return levels_[n]; }

    Index nondegenerate_count(int n) const
    {
        return static_cast<Index>(std::count(degenerate_[n].begin(), degenerate_[n].end(), 0));
    }

    std::vector<Index> nondegenerate_counts() const
    {
        std::vector<Index> out;
        for (int n = 0; n <= cap(); ++n)
            out.push_back(nondegenerate_count(n));
        return out;
    }

    /// Same simplices and tables, labels ignored.
    bool same_tables(const SimplicialSet& o) const
    {
        if (cap() != o.cap())
            return false;
        for (int n = 0; n <= cap(); ++n)
            if (levels_[n].count != o.levels_[n].count || levels_[n].faces != o.levels_[n].faces ||
                levels_[n].degeneracies != o.levels_[n].degeneracies)
                return false;
        return true;
    }

    /// Keeps levels 0..new_cap.
    SimplicialSet truncated(int new_cap) const
    {
        if (new_cap < 0 || new_cap > cap())
            throw Error(Errc::CapTooSmall, "cannot truncate to " + std::to_string(new_cap));
        std::vector<Level> ls(levels_.begin(), levels_.begin() + new_cap + 1);
        ls.back().degeneracies.clear();
        return SimplicialSet(std::move(ls));
    }

private:
    std::vector<Level> levels_;
    std::vector<std::vector<char>> degenerate_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

inline SSetPtr share(SimplicialSet s) { return std::make_shared<const SimplicialSet>(std::move(s)); }

/**
 * Every failure of the five families of simplicial identities, wherever both
 * sides are defined inside the cap. Empty means the set is simplicial.
 */
inline std::vector<std::string> simplicial_identity_failures(const SimplicialSet& k, std::size_t max_reports = 16)
{
    std::vector<std::string> out;
    std::size_t total = 0;
    auto report = [&](const std::string& what, int n, Index s) {
        ++total;
        if (out.size() < max_reports)
            out.push_back(what + " at level " + std::to_string(n) + ", simplex " + k.label(n, s));
    };
    const int cap = k.cap();
    for (int n = 0; n <= cap; ++n) {
        for (Index s = 0; s < k.size(n); ++s) {
            // d_i d_j = d_{j-1} d_i, i < j
            if (n >= 2)
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        if (k.face(n - 1, i, k.face(n, j, s)) != k.face(n - 1, j - 1, k.face(n, i, s)))
                            report("d" + std::to_string(i) + "d" + std::to_string(j), n, s);
            if (n >= cap)
                continue;
            for (int j = 0; j <= n; ++j) {
                Index sj = k.degeneracy(n, j, s);
                for (int i = 0; i <= n + 1; ++i) {
                    if (i == j || i == j + 1) {
                        if (k.face(n + 1, i, sj) != s)
                            report("d" + std::to_string(i) + "s" + std::to_string(j) + "=id", n, s);
                    } else if (i < j) {
                        if (k.face(n + 1, i, sj) != k.degeneracy(n - 1, j - 1, k.face(n, i, s)))
                            report("d" + std::to_string(i) + "s" + std::to_string(j), n, s);
                    } else {
                        if (k.face(n + 1, i, sj) != k.degeneracy(n - 1, j, k.face(n, i - 1, s)))
                            report("d" + std::to_string(i) + "s" + std::to_string(j), n, s);
                    }
                }
                if (n + 1 < cap)
                    for (int i = 0; i <= j; ++i)
                        if (k.degeneracy(n + 1, i, sj) != k.degeneracy(n + 1, j + 1, k.degeneracy(n, i, s)))
                            report("s" + std::to_string(i) + "s" + std::to_string(j), n, s);
            }
        }
    }
    if (total > out.size())
        out.push_back("... " + std::to_string(total - out.size()) + " more");
    return out;
}

/// Throws NotSimplicial naming the first failing identity.
inline void check_simplicial(const SimplicialSet& k)
{
    auto f = simplicial_identity_failures(k, 1);
    if (!f.empty())
        throw Error(Errc::NotSimplicial, f.front());
}

/// Applies θ*, for θ: [n] -> [m] monotone given as its value list, to an m-simplex.
inline Index apply_operator(const SimplicialSet& k, const std::vector<int>& theta, int m, Index s)
{
    const int n = static_cast<int>(theta.size()) - 1;
    // epi-mono factorization: image I ⊂ [m] (mono part), repeats (epi part)
    std::vector<int> image;
    for (int v : theta)
        if (image.empty() || image.back() != v)
            image.push_back(v);
    Index x = s;
    int level = m;
    for (int j = m; j >= 0; --j) {
        if (std::binary_search(image.begin(), image.end(), j))
            continue;
        x = k.face(level, j, x);
        --level;
    }
    for (int a = 0; a < n; ++a) {
        if (theta[a] == theta[a + 1]) {
            if (level >= k.cap())
                throw Error(Errc::CapTooSmall, "operator leaves the truncation");
            x = k.degeneracy(level, a, x);
            ++level;
        }
    }
    return x;
}

struct SimplicialMap {
    SSetPtr source;
    SSetPtr target;
    std::vector<Table> levels;  // levels[n][s] for n <= source cap
};

/// Throws NotSimplicial naming the failing operator and simplex.
inline void check_smap(const SimplicialMap& f)
{
    const SimplicialSet& a = *f.source;
    const SimplicialSet& b = *f.target;
    if (a.cap() > b.cap())
        throw Error(Errc::CapMismatch, "source cap exceeds target cap");
    if (f.levels.size() != static_cast<std::size_t>(a.cap() + 1))
        throw Error(Errc::NotSimplicial, "map has the wrong number of levels");
    for (int n = 0; n <= a.cap(); ++n) {
        if (f.levels[n].size() != a.size(n))
            throw Error(Errc::NotSimplicial, "level " + std::to_string(n) + " table size");
        for (Index v : f.levels[n])
            if (v >= b.size(n))
                throw Error(Errc::NotSimplicial, "level " + std::to_string(n) + " maps out of range");
    }
    for (int n = 0; n <= a.cap(); ++n)
        for (Index s = 0; s < a.size(n); ++s) {
            for (int i = 0; n > 0 && i <= n; ++i)
                if (f.levels[n - 1][a.face(n, i, s)] != b.face(n, i, f.levels[n][s]))
                    throw Error(Errc::NotSimplicial,
                                "d" + std::to_string(i) + " at level " + std::to_string(n) + ", simplex " + a.label(n, s));
            for (int i = 0; n < a.cap() && i <= n; ++i)
                if (f.levels[n + 1][a.degeneracy(n, i, s)] != b.degeneracy(n, i, f.levels[n][s]))
                    throw Error(Errc::NotSimplicial,
                                "s" + std::to_string(i) + " at level " + std::to_string(n) + ", simplex " + a.label(n, s));
        }
}

inline SimplicialMap validate_smap(SSetPtr source, SSetPtr target, std::vector<Table> levels)
{
    SimplicialMap f{std::move(source), std::move(target), std::move(levels)};
    check_smap(f);
    return f;
}

inline SimplicialMap identity_smap(const SSetPtr& k)
{
    SimplicialMap f{k, k, {}};
    for (int n = 0; n <= k->cap(); ++n) {
        Table t(k->size(n));
        std::iota(t.begin(), t.end(), Index{0});
        f.levels.push_back(std::move(t));
    }
    return f;
}

/// g∘f
inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f)
{
    if (f.target != g.source && !f.target->same_tables(*g.source))
        throw Error(Errc::CapMismatch, "simplicial maps are not composable");
    SimplicialMap h{f.source, g.target, {}};
    for (std::size_t n = 0; n < f.levels.size(); ++n) {
        Table t;
        t.reserve(f.levels[n].size());
        for (Index s : f.levels[n])
            t.push_back(g.levels[n][s]);
        h.levels.push_back(std::move(t));
    }
    return h;
}

inline bool operator==(const SimplicialMap& f, const SimplicialMap& g)
{
    return (f.source == g.source || f.source->same_tables(*g.source)) &&
           (f.target == g.target || f.target->same_tables(*g.target)) && f.levels == g.levels;
}

/**
 * Bisimplicial set truncated at (pcap, qcap). Horizontal operators act on p,
 * vertical on q. Tables are indexed [p][q][i].
 */
class BisimplicialSet {
public:
    int pcap = 0;
    int qcap = 0;
    std::vector<std::vector<Index>> counts;                 // [p][q]
    std::vector<std::vector<std::vector<Table>>> hface;     // (p,q) -> (p-1,q)
    std::vector<std::vector<std::vector<Table>>> hdeg;      // (p,q) -> (p+1,q)
    std::vector<std::vector<std::vector<Table>>> vface;     // (p,q) -> (p,q-1)
    std::vector<std::vector<std::vector<Table>>> vdeg;      // (p,q) -> (p,q+1)

    Index size(int p, int q) const { return counts[p][q]; }

    /// The simplicial set q ↦ (p fixed) ... horizontal direction at fixed q.
    SimplicialSet horizontal_slice(int q) const
    {
        std::vector<SimplicialSet::Level> ls(pcap + 1);
        for (int p = 0; p <= pcap; ++p) {
            ls[p].count = counts[p][q];
            ls[p].faces = hface[p][q];
            ls[p].degeneracies = hdeg[p][q];
        }
        return SimplicialSet(std::move(ls));
    }

    /// The simplicial set in the vertical direction at fixed p.
    SimplicialSet vertical_slice(int p) const
    {
        std::vector<SimplicialSet::Level> ls(qcap + 1);
        for (int q = 0; q <= qcap; ++q) {
            ls[q].count = counts[p][q];
            ls[q].faces = vface[p][q];
            ls[q].degeneracies = vdeg[p][q];
        }
        return SimplicialSet(std::move(ls));
    }
};

/**
 * Simplicial identities in each direction plus commutation of every
 * horizontal operator with every vertical operator, exhaustively.
 */
inline std::vector<std::string> bisimplicial_identity_failures(const BisimplicialSet& b)
{
    std::vector<std::string> out;
    for (int q = 0; q <= b.qcap; ++q)
        for (auto& f : simplicial_identity_failures(b.horizontal_slice(q), 4))
            out.push_back("horizontal, q=" + std::to_string(q) + ": " + f);
    for (int p = 0; p <= b.pcap; ++p)
        for (auto& f : simplicial_identity_failures(b.vertical_slice(p), 4))
            out.push_back("vertical, p=" + std::to_string(p) + ": " + f);
    auto fail = [&](const std::string& what, int p, int q, Index s) {
        if (out.size() < 32)
            out.push_back(what + " at (" + std::to_string(p) + "," + std::to_string(q) + ") simplex " + std::to_string(s));
    };
    for (int p = 0; p <= b.pcap; ++p)
        for (int q = 0; q <= b.qcap; ++q)
            for (Index s = 0; s < b.counts[p][q]; ++s) {
                for (int i = 0; p > 0 && i <= p; ++i) {
                    for (int j = 0; q > 0 && j <= q; ++j)
                        if (b.vface[p - 1][q][j][b.hface[p][q][i][s]] != b.hface[p][q - 1][i][b.vface[p][q][j][s]])
                            fail("hface/vface", p, q, s);
                    for (int j = 0; q < b.qcap && j <= q; ++j)
                        if (b.vdeg[p - 1][q][j][b.hface[p][q][i][s]] != b.hface[p][q + 1][i][b.vdeg[p][q][j][s]])
                            fail("hface/vdeg", p, q, s);
                }
                for (int i = 0; p < b.pcap && i <= p; ++i) {
                    for (int j = 0; q > 0 && j <= q; ++j)
                        if (b.vface[p + 1][q][j][b.hdeg[p][q][i][s]] != b.hdeg[p][q - 1][i][b.vface[p][q][j][s]])
                            fail("hdeg/vface", p, q, s);
                    for (int j = 0; q < b.qcap && j <= q; ++j)
                        if (b.vdeg[p + 1][q][j][b.hdeg[p][q][i][s]] != b.hdeg[p][q + 1][i][b.vdeg[p][q][j][s]])
                            fail("hdeg/vdeg", p, q, s);
                }
            }
    return out;
}

/// Level n is (n,n); d_i = d^v_i d^h_i and s_i = s^v_i s^h_i.
inline SimplicialSet diag(const BisimplicialSet& b)
{
    if (b.pcap != b.qcap)
        throw Error(Errc::CapMismatch, "diagonal needs equal caps, got " + std::to_string(b.pcap) + " and " +
                                           std::to_string(b.qcap));
    const int cap = b.pcap;
    std::vector<SimplicialSet::Level> ls(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        ls[n].count = b.counts[n][n];
        for (int i = 0; n > 0 && i <= n; ++i) {
            Table t(ls[n].count);
            for (Index s = 0; s < t.size(); ++s)
                t[s] = b.vface[n - 1][n][i][b.hface[n][n][i][s]];
            ls[n].faces.push_back(std::move(t));
        }
        for (int i = 0; n < cap && i <= n; ++i) {
            Table t(ls[n].count);
            for (Index s = 0; s < t.size(); ++s)
                t[s] = b.vdeg[n + 1][n][i][b.hdeg[n][n][i][s]];
            ls[n].degeneracies.push_back(std::move(t));
        }
    }
    return SimplicialSet(std::move(ls));
}

enum class Direction { h, v };

inline const char* to_string(Direction d) { return d == Direction::h ? "h" : "v"; }

/**
 * Edge map into the diagonal. For `h` the source is the q = 0 column (the
 * horizontal slice) and an n-simplex x goes to (s^v_0)^n x; for `v` the
 * source is the p = 0 row and x goes to (s^h_0)^n x.
 */
inline SimplicialMap edge_map(const BisimplicialSet& b, Direction dir, const SSetPtr& diagonal)
{
    if (b.pcap != b.qcap)
        throw Error(Errc::CapMismatch, "edge map needs equal caps");
    const int cap = b.pcap;
    SSetPtr source = share(dir == Direction::h ? b.horizontal_slice(0) : b.vertical_slice(0));
    SimplicialMap f{source, diagonal, {}};
    for (int n = 0; n <= cap; ++n) {
        Table t(source->size(n));
        for (Index s = 0; s < t.size(); ++s) {
            Index x = s;
            for (int k = 0; k < n; ++k)
                x = dir == Direction::h ? b.vdeg[n][k][0][x] : b.hdeg[k][n][0][x];
            t[s] = x;
        }
        f.levels.push_back(std::move(t));
    }
    check_smap(f);
    return f;
}

/**
 * Simplicial set of an ordered simplicial complex: n-simplices are
 * nondecreasing vertex sequences whose support is a face. Vertices are
 * 0..num_vertices-1 and every facet is listed as a vertex set.
 */
inline SimplicialSet from_ordered_complex(int num_vertices, const std::vector<std::vector<int>>& facets, int cap)
{
    if (cap < 0)
        throw Error(Errc::CapTooSmall, "cap must be >= 0");
    auto is_face = [&](const std::vector<int>& seq) {
        std::vector<int> support(seq);
        support.erase(std::unique(support.begin(), support.end()), support.end());
        for (const auto& f : facets) {
            std::vector<int> sorted(f);
            std::sort(sorted.begin(), sorted.end());
            if (std::includes(sorted.begin(), sorted.end(), support.begin(), support.end()))
                return true;
        }
        return support.size() == 1;
    };
    std::vector<std::vector<std::vector<int>>> simplices(cap + 1);
    std::vector<int> seq;
    std::function<void(int, int)> gen = [&](int len, int start) {
        if (static_cast<int>(seq.size()) == len) {
            if (is_face(seq))
                simplices[len - 1].push_back(seq);
            return;
        }
        for (int v = start; v < num_vertices; ++v) {
            seq.push_back(v);
            gen(len, v);
            seq.pop_back();
        }
    };
    for (int n = 0; n <= cap; ++n)
        gen(n + 1, 0);
    auto find = [&](int n, const std::vector<int>& s) {
        auto it = std::lower_bound(simplices[n].begin(), simplices[n].end(), s);
        return static_cast<Index>(it - simplices[n].begin());
    };
    std::vector<SimplicialSet::Level> ls(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        ls[n].count = simplices[n].size();
        for (const auto& s : simplices[n]) {
            std::string label;
            for (int v : s)
                label += std::to_string(v);
            ls[n].labels.push_back(label);
        }
        for (int i = 0; n > 0 && i <= n; ++i) {
            Table t;
            for (const auto& s : simplices[n]) {
                auto f = s;
                f.erase(f.begin() + i);
                t.push_back(find(n - 1, f));
            }
            ls[n].faces.push_back(std::move(t));
        }
        for (int i = 0; n < cap && i <= n; ++i) {
            Table t;
            for (const auto& s : simplices[n]) {
                auto f = s;
                f.insert(f.begin() + i, s[i]);
                t.push_back(find(n + 1, f));
            }
            ls[n].degeneracies.push_back(std::move(t));
        }
    }
    return SimplicialSet(std::move(ls));
}

}  // namespace nervekit
