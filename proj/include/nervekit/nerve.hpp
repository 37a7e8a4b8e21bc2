/**
 * Nerves of finite categories and the simplicial maps induced by functors.
 */
#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "functor.hpp"
#include "simplicial.hpp"

namespace nervekit {

struct ChainHash {
    std::size_t operator()(const std::vector<Mor>& v) const noexcept
    {
        std::size_t h = v.size();
        for (Mor m : v)
            h ^= m + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

/**
 * Level n holds the composable chains (m_1, ..., m_n) of the category,
 * identities allowed; level 0 holds the objects. d_0 and d_n drop the ends,
 * inner faces compose, s_i inserts the identity at the i-th vertex.
 */
class Nerve {
public:
    CategoryPtr category;
    SSetPtr simplicial;
    /// True when nondegenerate chains of length cap+1 exist (loops or idempotents).
    bool truncation_warning = false;

    int cap() const { return simplicial->cap(); }

    /// Chain of the n-simplex s (empty for n = 0).
    std::vector<Mor> chain(int n, Index s) const
    {
        if (n == 0)
            return {};
        return {chains_[n].begin() + static_cast<std::ptrdiff_t>(s * n),
                chains_[n].begin() + static_cast<std::ptrdiff_t>((s + 1) * n)};
    }

    /// Vertex sequence of the n-simplex s.
    std::vector<Obj> vertices(int n, Index s) const
    {
        if (n == 0)
            return {static_cast<Obj>(s)};
        std::vector<Obj> out;
        auto c = chain(n, s);
        out.push_back(category->src(c.front()));
        for (Mor m : c)
            out.push_back(category->dst(m));
        return out;
    }

    Index find(const std::vector<Mor>& chain) const
    {
        const int n = static_cast<int>(chain.size());
        auto it = index_[n].find(chain);
        if (it == index_[n].end())
            throw Error(Errc::Internal, "chain not present in nerve");
        return it->second;
    }

    friend Nerve nerve(const CategoryPtr& c, int cap);

private:
    std::vector<std::vector<Mor>> chains_;  // flat, n entries per simplex
    std::vector<std::unordered_map<std::vector<Mor>, Index, ChainHash>> index_;
};

inline Nerve nerve(const CategoryPtr& cp, int cap)
{
    if (cap < 0)
        throw Error(Errc::CapTooSmall, "cap must be >= 0");
    const FiniteCategory& c = *cp;
    Nerve nv;
    nv.category = cp;
    nv.chains_.resize(cap + 1);
    nv.index_.resize(cap + 1);
    // level n+1 extends level n chains by one morphism
    std::vector<std::vector<Mor>> cur;
    for (int n = 1; n <= cap; ++n) {
        std::vector<std::vector<Mor>> next;
        if (n == 1) {
            for (Mor m = 0; m < c.num_morphisms(); ++m)
                next.push_back({m});
        } else {
            for (const auto& ch : cur)
                for (Mor m : c.out(c.dst(ch.back()))) {
                    auto e = ch;
                    e.push_back(m);
                    next.push_back(std::move(e));
                }
        }
        auto& flat = nv.chains_[n];
        flat.reserve(next.size() * n);
        for (Index s = 0; s < next.size(); ++s) {
            flat.insert(flat.end(), next[s].begin(), next[s].end());
            nv.index_[n].emplace(next[s], s);
        }
        cur = std::move(next);
    }

    std::vector<SimplicialSet::Level> ls(cap + 1);
    ls[0].count = c.num_objects();
    ls[0].labels = c.object_names();
    for (int n = 1; n <= cap; ++n) {
        const Index count = nv.chains_[n].size() / n;
        ls[n].count = count;
        ls[n].labels.reserve(count);
        for (int i = 0; i <= n; ++i)
            ls[n].faces.emplace_back(count);
        for (Index s = 0; s < count; ++s) {
            auto ch = nv.chain(n, s);
            std::string label;
            for (int k = 0; k < n; ++k)
                label += (k ? "|" : "") + c.morphism_name(ch[k]);
            ls[n].labels.push_back(std::move(label));
            if (n == 1) {
                ls[1].faces[0][s] = c.dst(ch[0]);
                ls[1].faces[1][s] = c.src(ch[0]);
                continue;
            }
            for (int i = 0; i <= n; ++i) {
                std::vector<Mor> f;
                f.reserve(n - 1);
                if (i == 0) {
                    f.assign(ch.begin() + 1, ch.end());
                } else if (i == n) {
                    f.assign(ch.begin(), ch.end() - 1);
                } else {
                    f.assign(ch.begin(), ch.begin() + (i - 1));
                    f.push_back(c.compose(ch[i], ch[i - 1]));
                    f.insert(f.end(), ch.begin() + i + 1, ch.end());
                }
                ls[n].faces[i][s] = nv.find(f);
            }
        }
    }
    for (int n = 0; n < cap; ++n) {
        for (int i = 0; i <= n; ++i) {
            Table t(ls[n].count);
            for (Index s = 0; s < ls[n].count; ++s) {
                std::vector<Mor> e;
                if (n == 0) {
                    e.push_back(c.identity(static_cast<Obj>(s)));
                } else {
                    auto ch = nv.chain(n, s);
                    Obj vi = i == 0 ? c.src(ch[0]) : c.dst(ch[i - 1]);
                    e.assign(ch.begin(), ch.begin() + i);
                    e.push_back(c.identity(vi));
                    e.insert(e.end(), ch.begin() + i, ch.end());
                }
                t[s] = nv.find(e);
            }
            ls[n].degeneracies.push_back(std::move(t));
        }
    }
    nv.simplicial = share(SimplicialSet(std::move(ls)));

    // look for a nondegenerate chain of length cap+1
    std::vector<Mor> stack;
    std::function<bool(Obj, int)> search = [&](Obj from, int remaining) -> bool {
        if (remaining == 0)
            return true;
        for (Mor m : c.out(from)) {
            if (c.is_identity(m))
                continue;
            if (search(c.dst(m), remaining - 1))
                return true;
        }
        return false;
    };
    for (Obj x = 0; x < c.num_objects() && !nv.truncation_warning; ++x)
        nv.truncation_warning = search(x, cap + 1);
    return nv;
}

/// N(F): applies F to every chain.
inline SimplicialMap nerve_map(const Functor& f, const Nerve& source, const Nerve& target)
{
    if (source.cap() > target.cap())
        throw Error(Errc::CapMismatch, "source nerve has the larger cap");
    SimplicialMap out{source.simplicial, target.simplicial, {}};
    for (int n = 0; n <= source.cap(); ++n) {
        Table t(source.simplicial->size(n));
        for (Index s = 0; s < t.size(); ++s) {
            if (n == 0) {
                t[s] = f(static_cast<Obj>(s));
                continue;
            }
            auto ch = source.chain(n, s);
            for (Mor& m : ch)
                m = f.map(m);
            t[s] = target.find(ch);
        }
        out.levels.push_back(std::move(t));
    }
    return out;
}

}  // namespace nervekit
