/**
 * Double categories: a horizontal and a vertical category on one object set
 * plus a set of bicommutative squares closed under pasting in both
 * directions. Also the categories of v-chains (ladder categories) and the
 * functors between them induced by faces and degeneracies of Δ^n.
 */
#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "functor.hpp"
#include "nerve.hpp"

namespace nervekit {

/// top: A -> B (h), bottom: C -> D (h), left: A -> C (v), right: B -> D (v).
struct Square {
    Mor top = npos;
    Mor bottom = npos;
    Mor left = npos;
    Mor right = npos;

    friend auto operator<=>(const Square&, const Square&) = default;
};

struct SquareHash {
    std::size_t operator()(const Square& s) const noexcept
    {
        std::size_t h = s.top;
        h = h * 0x100000001b3ULL ^ s.bottom;
        h = h * 0x100000001b3ULL ^ s.left;
        h = h * 0x100000001b3ULL ^ s.right;
        return h ^ (h >> 29);
    }
};

class DoubleCategory {
public:
    DoubleCategory() = default;

    /// Unchecked constructor; use validate_double for untrusted input.
    DoubleCategory(CategoryPtr h, CategoryPtr v, std::vector<Square> squares)
        : h_(std::move(h)), v_(std::move(v)), squares_(std::move(squares))
    {
        std::sort(squares_.begin(), squares_.end());
        squares_.erase(std::unique(squares_.begin(), squares_.end()), squares_.end());
        members_.insert(squares_.begin(), squares_.end());
        for (std::size_t k = 0; k < squares_.size(); ++k) {
            by_top_left_[key(squares_[k].top, squares_[k].left)].push_back(k);
        }
    }

    const FiniteCategory& hcat() const { return *h_; }
    const FiniteCategory& vcat() const { return *v_; }
    const CategoryPtr& hptr() const { return h_; }
    const CategoryPtr& vptr() const { return v_; }
    std::size_t num_objects() const { return h_->num_objects(); }
    const std::vector<Square>& squares() const { return squares_; }
    bool contains(const Square& s) const { return members_.count(s) != 0; }

    /// Squares with the given top h-map and left v-map.
    std::vector<Square> squares_from(Mor top, Mor left) const
    {
        std::vector<Square> out;
        auto it = by_top_left_.find(key(top, left));
        if (it != by_top_left_.end())
            for (std::size_t k : it->second)
                out.push_back(squares_[k]);
        return out;
    }

    std::string describe(const Square& s) const
    {
        return "[" + h_->morphism_name(s.top) + ", " + h_->morphism_name(s.bottom) + ", " +
               v_->morphism_name(s.left) + ", " + v_->morphism_name(s.right) + "]";
    }

private:
    static std::uint64_t key(Mor a, Mor b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

    CategoryPtr h_, v_;
    std::vector<Square> squares_;
    std::unordered_set<Square, SquareHash> members_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_top_left_;
};

using DoublePtr = std::shared_ptr<const DoubleCategory>;

inline DoublePtr share(DoubleCategory d) { return std::make_shared<const DoubleCategory>(std::move(d)); }

inline Square horizontal_paste(const FiniteCategory& h, const Square& a, const Square& b)
{
    return {h.compose(b.top, a.top), h.compose(b.bottom, a.bottom), a.left, b.right};
}

inline Square vertical_paste(const FiniteCategory& v, const Square& a, const Square& b)
{
    return {a.top, b.bottom, v.compose(b.left, a.left), v.compose(b.right, a.right)};
}

struct DoubleOptions {
    bool auto_identity_squares = false;
    bool auto_close = false;
};

namespace detail {

inline void check_corners(const FiniteCategory& h, const FiniteCategory& v, const Square& s, const std::string& what)
{
    if (h.src(s.top) != v.src(s.left) || h.dst(s.top) != v.src(s.right) || h.src(s.bottom) != v.dst(s.left) ||
        h.dst(s.bottom) != v.dst(s.right))
        throw Error(Errc::CornerMismatch, what);
}

// One pasting pass; returns the missing composites with the pair that produced them.
inline std::vector<std::pair<Square, std::string>> missing_pastes(const FiniteCategory& h, const FiniteCategory& v,
                                                                  const std::set<Square>& s)
{
    std::vector<std::pair<Square, std::string>> out;
    std::map<Mor, std::vector<Square>> by_left, by_top;
    for (const auto& q : s) {
        by_left[q.left].push_back(q);
        by_top[q.top].push_back(q);
    }
    for (const auto& a : s) {
        for (const auto& b : by_left[a.right]) {
            Square c = horizontal_paste(h, a, b);
            if (!s.count(c))
                out.push_back({c, "horizontal paste of [" + h.morphism_name(a.top) + "," + h.morphism_name(a.bottom) +
                                      "," + v.morphism_name(a.left) + "," + v.morphism_name(a.right) + "] and [" +
                                      h.morphism_name(b.top) + "," + h.morphism_name(b.bottom) + "," +
                                      v.morphism_name(b.left) + "," + v.morphism_name(b.right) + "]"});
        }
        for (const auto& b : by_top[a.bottom]) {
            Square c = vertical_paste(v, a, b);
            if (!s.count(c))
                out.push_back({c, "vertical paste of [" + h.morphism_name(a.top) + "," + h.morphism_name(a.bottom) +
                                      "," + v.morphism_name(a.left) + "," + v.morphism_name(a.right) + "] and [" +
                                      h.morphism_name(b.top) + "," + h.morphism_name(b.bottom) + "," +
                                      v.morphism_name(b.left) + "," + v.morphism_name(b.right) + "]"});
        }
    }
    return out;
}

}  // namespace detail

/**
 * Checks shared objects, square corners, identity squares and pasting
 * closure. With `auto_identity_squares` the identity squares are inserted;
 * with `auto_close` missing composites are added to a fixpoint instead of
 * being rejected.
 */
inline DoubleCategory validate_double(CategoryPtr h, CategoryPtr v, std::vector<Square> squares,
                                      DoubleOptions opts = {})
{
    if (h->object_names() != v->object_names())
        throw Error(Errc::SharedObjectMismatch, "horizontal and vertical categories have different objects");
    for (const auto& s : squares) {
        if (s.top >= h->num_morphisms() || s.bottom >= h->num_morphisms() || s.left >= v->num_morphisms() ||
            s.right >= v->num_morphisms())
            throw Error(Errc::CornerMismatch, "square refers to an unknown morphism");
        std::string name = "[" + h->morphism_name(s.top) + "," + h->morphism_name(s.bottom) + "," +
                           v->morphism_name(s.left) + "," + v->morphism_name(s.right) + "]";
        detail::check_corners(*h, *v, s, "square " + name + " has mismatched corners");
    }
    std::set<Square> set(squares.begin(), squares.end());
    auto require = [&](const Square& s, const std::string& what) {
        if (set.count(s))
            return;
        if (!opts.auto_identity_squares)
            throw Error(Errc::MissingIdentitySquare, what);
        set.insert(s);
    };
    for (Mor a = 0; a < v->num_morphisms(); ++a)
        require({h->identity(v->src(a)), h->identity(v->dst(a)), a, a},
                "identity square on v-map '" + v->morphism_name(a) + "'");
    for (Mor b = 0; b < h->num_morphisms(); ++b)
        require({b, b, v->identity(h->src(b)), v->identity(h->dst(b))},
                "identity square on h-map '" + h->morphism_name(b) + "'");
    while (true) {
        auto missing = detail::missing_pastes(*h, *v, set);
        if (missing.empty())
            break;
        if (!opts.auto_close)
            throw Error(Errc::NotPastingClosed, missing.front().second);
        for (auto& [s, why] : missing)
            set.insert(s);
    }
    return DoubleCategory(std::move(h), std::move(v), {set.begin(), set.end()});
}

/// Identifier-based raw form used by the document readers.
inline DoubleCategory validate_double(CategoryPtr h, CategoryPtr v,
                                      const std::vector<std::array<std::string, 4>>& squares, DoubleOptions opts = {})
{
    std::vector<Square> sq;
    for (const auto& s : squares) {
        auto t = h->find_morphism(s[0]);
        auto b = h->find_morphism(s[1]);
        auto l = v->find_morphism(s[2]);
        auto r = v->find_morphism(s[3]);
        if (!t || !b || !l || !r)
            throw Error(Errc::CornerMismatch,
                        "square [" + s[0] + "," + s[1] + "," + s[2] + "," + s[3] + "] names an unknown morphism");
        sq.push_back({*t, *b, *l, *r});
    }
    return validate_double(std::move(h), std::move(v), std::move(sq), opts);
}

/// C_bi: both directions are C and the squares are the commutative squares.
inline DoubleCategory trivial_double(const CategoryPtr& cp)
{
    const FiniteCategory& c = *cp;
    std::vector<Square> squares;
    for (Mor t = 0; t < c.num_morphisms(); ++t)
        for (Mor l : c.out(c.src(t)))
            for (Mor r : c.out(c.dst(t))) {
                Mor rt = c.compose(r, t);
                for (Mor b : c.hom(c.dst(l), c.dst(r)))
                    if (c.compose(b, l) == rt)
                        squares.push_back({t, b, l, r});
            }
    return DoubleCategory(cp, cp, std::move(squares));
}

/// Swaps the roles of h and v.
inline DoubleCategory transpose(const DoubleCategory& d)
{
    std::vector<Square> squares;
    squares.reserve(d.squares().size());
    for (const auto& s : d.squares())
        squares.push_back({s.left, s.right, s.top, s.bottom});
    return DoubleCategory(d.vptr(), d.hptr(), std::move(squares));
}

/**
 * The category Map(Δ^n_v, D)_h: objects are v-chains of length n (in the
 * order of the nerve of D_v), morphisms are ladders of n bicommutative
 * squares. For n = 0 it is D_h itself.
 */
struct ChainCategory {
    int length = 0;
    CategoryPtr category;
    std::vector<std::vector<Mor>> chains;     // v-maps of each object (empty for n = 0)
    std::vector<std::vector<Obj>> vertices;   // n+1 base objects of each object
    std::vector<std::vector<Mor>> ladders;    // n+1 h-maps of each morphism

    Obj find_object(const std::vector<Mor>& chain) const
    {
        auto it = object_index.find(chain);
        if (it == object_index.end())
            throw Error(Errc::Internal, "v-chain not found");
        return it->second;
    }

    /// key = [source object, target object, h_0, ..., h_n]
    std::optional<Mor> find_ladder(const std::vector<Mor>& key) const
    {
        auto it = ladder_index.find(key);
        if (it == ladder_index.end())
            return std::nullopt;
        return it->second;
    }

    std::unordered_map<std::vector<Mor>, Obj, ChainHash> object_index;
    std::unordered_map<std::vector<Mor>, Mor, ChainHash> ladder_index;
};

inline std::string chain_name(const FiniteCategory& c, const std::vector<Mor>& ms)
{
    std::string s = "<";
    for (std::size_t k = 0; k < ms.size(); ++k)
        s += (k ? "," : "") + c.morphism_name(ms[k]);
    return s + ">";
}

/// `vnerve` must be the nerve of D_v with cap >= n.
inline ChainCategory chain_category(const DoubleCategory& d, const Nerve& vnerve, int n)
{
    if (n < 0)
        throw Error(Errc::CapTooSmall, "chain length must be >= 0");
    const FiniteCategory& h = d.hcat();
    const FiniteCategory& v = d.vcat();
    ChainCategory cc;
    cc.length = n;
    if (n == 0) {
        cc.category = d.hptr();
        for (Obj x = 0; x < h.num_objects(); ++x) {
            cc.chains.emplace_back();
            cc.vertices.push_back({x});
            cc.object_index.emplace(std::vector<Mor>{x}, x);
        }
        for (Mor m = 0; m < h.num_morphisms(); ++m) {
            cc.ladders.push_back({m});
            cc.ladder_index.emplace(std::vector<Mor>{h.src(m), h.dst(m), m}, m);
        }
        return cc;
    }
    if (vnerve.cap() < n)
        throw Error(Errc::CapTooSmall, "nerve of D_v is truncated below the chain length");
    CategoryBuilder b;
    const Index count = vnerve.simplicial->size(n);
    for (Index s = 0; s < count; ++s) {
        auto ch = vnerve.chain(n, s);
        b.add_object(chain_name(v, ch));
        cc.vertices.push_back(vnerve.vertices(n, s));
        cc.object_index.emplace(ch, static_cast<Obj>(s));
        cc.chains.push_back(std::move(ch));
    }
    // ladders out of each chain, row by row through the square index
    std::vector<Mor> hs;
    for (Obj a = 0; a < count; ++a) {
        const auto& alpha = cc.chains[a];
        const auto& va = cc.vertices[a];
        std::vector<Mor> right;
        std::function<void(int)> rec = [&](int row) {
            if (row == n + 1) {
                Obj target = cc.find_object(right);
                std::vector<Mor> key{a, target};
                key.insert(key.end(), hs.begin(), hs.end());
                std::string name = chain_name(h, hs) + ":" + b.object_name(a) + "=>" + b.object_name(target);
                Mor m = b.add_morphism(std::move(name), a, target);
                cc.ladders.push_back(hs);
                cc.ladder_index.emplace(std::move(key), m);
                return;
            }
            for (const auto& sq : d.squares_from(hs.back(), alpha[row - 1])) {
                hs.push_back(sq.bottom);
                right.push_back(sq.right);
                rec(row + 1);
                right.pop_back();
                hs.pop_back();
            }
        };
        for (Mor h0 : h.out(va[0])) {
            hs.assign(1, h0);
            rec(1);
        }
    }
    for (Obj a = 0; a < count; ++a) {
        std::vector<Mor> key{a, a};
        for (Obj x : cc.vertices[a])
            key.push_back(h.identity(x));
        auto m = cc.find_ladder(key);
        if (!m)
            throw Error(Errc::MissingIdentitySquare, "identity ladder missing on " + b.object_name(a));
        b.set_identity(a, *m);
    }
    FiniteCategory cat = std::move(b).build(
        [&](Mor g, Mor f) -> Mor {
            std::vector<Mor> key{b.src(f), b.dst(g)};
            for (int i = 0; i <= n; ++i)
                key.push_back(h.compose(cc.ladders[g][i], cc.ladders[f][i]));
            auto m = cc.find_ladder(key);
            if (!m)
                throw Error(Errc::NotPastingClosed, "composite ladder " + chain_name(h, {key.begin() + 2, key.end()}) +
                                                        " is not made of bicommutative squares");
            return *m;
        },
        LawCheck::skip);
    cc.category = share(std::move(cat));
    return cc;
}

/// Chain categories of lengths 0..max_length over a shared nerve of D_v.
struct ChainTower {
    DoublePtr base;
    Nerve vnerve;
    std::vector<ChainCategory> levels;

    const ChainCategory& operator[](int n) const { return levels.at(n); }
};

inline ChainTower chain_tower(const DoublePtr& d, int max_length)
{
    if (max_length < 0)
        throw Error(Errc::CapTooSmall, "max length must be >= 0");
    ChainTower t;
    t.base = d;
    t.vnerve = nerve(d->vptr(), std::max(max_length, 1));
    for (int n = 0; n <= max_length; ++n)
        t.levels.push_back(chain_category(*d, t.vnerve, n));
    return t;
}

/// Functor Map(Δ^n_v)_h -> Map(Δ^{n-1}_v)_h induced by the i-th coface of Δ^{n-1} in Δ^n.
inline Functor chain_face(const ChainTower& t, int n, int i)
{
    if (n < 1 || n >= static_cast<int>(t.levels.size()) || i < 0 || i > n)
        throw Error(Errc::InvalidArgument, "chain face index out of range");
    const ChainCategory& from = t[n];
    const ChainCategory& to = t[n - 1];
    const Nerve& vn = t.vnerve;
    Functor f{from.category, to.category, {}, {}};
    for (Obj a = 0; a < from.category->num_objects(); ++a)
        f.on_objects.push_back(static_cast<Obj>(vn.simplicial->face(n, i, a)));
    for (Mor m = 0; m < from.category->num_morphisms(); ++m) {
        std::vector<Mor> key{f.on_objects[from.category->src(m)], f.on_objects[from.category->dst(m)]};
        for (int k = 0; k <= n; ++k)
            if (k != i)
                key.push_back(from.ladders[m][k]);
        auto image = to.find_ladder(key);
        if (!image)
            throw Error(Errc::NotPastingClosed, "face of a ladder is not a ladder");
        f.on_morphisms.push_back(*image);
    }
    return f;
}

/// Functor Map(Δ^n_v)_h -> Map(Δ^{n+1}_v)_h inserting an identity v-map at vertex i.
inline Functor chain_degeneracy(const ChainTower& t, int n, int i)
{
    if (n < 0 || n + 1 >= static_cast<int>(t.levels.size()) || i < 0 || i > n)
        throw Error(Errc::InvalidArgument, "chain degeneracy index out of range");
    const ChainCategory& from = t[n];
    const ChainCategory& to = t[n + 1];
    const Nerve& vn = t.vnerve;
    Functor f{from.category, to.category, {}, {}};
    for (Obj a = 0; a < from.category->num_objects(); ++a)
        f.on_objects.push_back(static_cast<Obj>(vn.simplicial->degeneracy(n, i, a)));
    for (Mor m = 0; m < from.category->num_morphisms(); ++m) {
        std::vector<Mor> key{f.on_objects[from.category->src(m)], f.on_objects[from.category->dst(m)]};
        for (int k = 0; k <= n; ++k) {
            key.push_back(from.ladders[m][k]);
            if (k == i)
                key.push_back(from.ladders[m][k]);
        }
        auto image = to.find_ladder(key);
        if (!image)
            throw Error(Errc::MissingIdentitySquare, "degenerate ladder missing");
        f.on_morphisms.push_back(*image);
    }
    return f;
}

enum class ShiftKind { extend, forget };

/**
 * extend: Map(Δ^{n-1}_v)_h -> Map(Δ^n_v)_h prepends an identity v-map;
 * forget: Map(Δ^n_v)_h -> Map(Δ^{n-1}_v)_h drops the first v-map.
 */
inline Functor chain_shift(const ChainTower& t, int n, ShiftKind kind)
{
    if (n < 1)
        throw Error(Errc::InvalidArgument, "chain shift needs n >= 1");
    Functor f = kind == ShiftKind::extend ? chain_degeneracy(t, n - 1, 0) : chain_face(t, n, 0);
    check_functor(f);
    return f;
}

}  // namespace nervekit
