/**
 * Zig-zags of bicommutative squares on the fixed six-object shape, their
 * functoriality along ladders, and the reduction check that turns such a
 * witness into a certified comparison of N D_h with diag(N D).
 */
#pragma once

#include <array>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "binerve.hpp"
#include "homology.hpp"
#include "moduli.hpp"

namespace nervekit {

/**
 * Positions 0 1 2 on the top row and 3 4 5 below them; v-edges go j -> j+3.
 * zig: 0 -> 1 <- 2 over 3 -> 4 <- 5.  zag: 0 <- 1 -> 2 over 3 <- 4 -> 5.
 */
enum class ZShape { zig, zag };

inline std::array<std::pair<int, int>, 4> h_edges(ZShape s)
{
    if (s == ZShape::zig)
        return {{{0, 1}, {2, 1}, {3, 4}, {5, 4}}};
    return {{{1, 0}, {1, 2}, {4, 3}, {4, 5}}};
}

struct ZDiagram {
    std::array<Obj, 6> objects{};
    std::array<Mor, 4> h{};  // along h_edges(shape)
    std::array<Mor, 3> v{};  // column j: j -> j+3
};

/// A functor Map(Δ^1_v, D)_h -> Map(Z, D)_h given by its values.
struct ReductionWitness {
    DoublePtr d;
    ChainTower tower;  // lengths 0 and 1
    ZShape shape = ZShape::zig;
    std::vector<ZDiagram> on_objects;              // per v-map
    std::vector<std::array<Mor, 6>> on_morphisms;  // per ladder
};

namespace detail {

inline Square z_square(ZShape shape, const ZDiagram& z, int k)
{
    auto e = h_edges(shape)[k];
    return {z.h[k], z.h[k + 2], z.v[e.first], z.v[e.second]};
}

}  // namespace detail

/// Shape on every v-map, then naturality and functoriality on every ladder.
inline void check_witness(const ReductionWitness& w)
{
    const DoubleCategory& d = *w.d;
    const FiniteCategory& h = d.hcat();
    const FiniteCategory& v = d.vcat();
    const ChainCategory& c1 = w.tower[1];
    const FiniteCategory& m1 = *c1.category;
    const auto edges = h_edges(w.shape);
    if (w.on_objects.size() != m1.num_objects() || w.on_morphisms.size() != m1.num_morphisms())
        throw Error(Errc::WitnessShapeError, "witness tables have the wrong size");
    for (Obj a = 0; a < m1.num_objects(); ++a) {
        const ZDiagram& z = w.on_objects[a];
        const Mor alpha = c1.chains[a][0];
        auto fail = [&](const std::string& what) {
            throw Error(Errc::WitnessShapeError, what + " on v-map '" + v.morphism_name(alpha) + "'");
        };
        if (z.v[0] != alpha)
            fail("left column is not the given v-map");
        if (z.v[2] != v.identity(z.objects[2]))
            fail("right column is not an identity");
        if (z.h[2] != h.identity(z.objects[3]) || z.h[3] != h.identity(z.objects[3]))
            fail("bottom row is not made of identities");
        for (int k = 0; k < 4; ++k)
            if (h.src(z.h[k]) != z.objects[edges[k].first] || h.dst(z.h[k]) != z.objects[edges[k].second])
                fail("h-map " + std::to_string(k) + " has the wrong endpoints");
        for (int j = 0; j < 3; ++j)
            if (v.src(z.v[j]) != z.objects[j] || v.dst(z.v[j]) != z.objects[j + 3])
                fail("v-map in column " + std::to_string(j) + " has the wrong endpoints");
        for (int k = 0; k < 2; ++k)
            if (!d.contains(detail::z_square(w.shape, z, k)))
                fail(std::string(k == 0 ? "left" : "right") + " square is not bicommutative");
    }
    for (Mor l = 0; l < m1.num_morphisms(); ++l) {
        const auto& c = w.on_morphisms[l];
        const ZDiagram& za = w.on_objects[m1.src(l)];
        const ZDiagram& zb = w.on_objects[m1.dst(l)];
        auto fail = [&](const std::string& what) {
            throw Error(Errc::WitnessNotFunctorial, what + " on ladder '" + m1.morphism_name(l) + "'");
        };
        if (c[0] != c1.ladders[l][0] || c[3] != c1.ladders[l][1])
            fail("left column components differ from the ladder");
        for (int p = 0; p < 6; ++p)
            if (h.src(c[p]) != za.objects[p] || h.dst(c[p]) != zb.objects[p])
                fail("component " + std::to_string(p) + " has the wrong endpoints");
        for (int k = 0; k < 4; ++k) {
            auto [s, t] = edges[k];
            if (h.compose(c[t], za.h[k]) != h.compose(zb.h[k], c[s]))
                fail("h-edge " + std::to_string(s) + "->" + std::to_string(t) + " is not natural");
        }
        for (int j = 0; j < 3; ++j)
            if (!d.contains({c[j], c[j + 3], za.v[j], zb.v[j]}))
                fail("column " + std::to_string(j) + " square is not bicommutative");
        if (m1.is_identity(l))
            for (int p = 0; p < 6; ++p)
                if (c[p] != h.identity(za.objects[p]))
                    fail("identity ladder does not go to identities");
        for (Mor g : m1.out(m1.dst(l))) {
            const auto& cg = w.on_morphisms[g];
            const auto& cgl = w.on_morphisms[m1.compose(g, l)];
            for (int p = 0; p < 6; ++p)
                if (cgl[p] != h.compose(cg[p], c[p]))
                    fail("composite with '" + m1.morphism_name(g) + "'");
        }
    }
}

/// The middle column as a functor Map(Δ^1_v, D)_h -> Map(Δ^1_v, D)_h.
inline Functor middle_functor(const ReductionWitness& w)
{
    const ChainCategory& c1 = w.tower[1];
    Functor f{c1.category, c1.category, {}, {}};
    for (const auto& z : w.on_objects)
        f.on_objects.push_back(c1.find_object({z.v[1]}));
    for (Mor l = 0; l < c1.category->num_morphisms(); ++l) {
        const auto& c = w.on_morphisms[l];
        auto m = c1.find_ladder({f.on_objects[c1.category->src(l)], f.on_objects[c1.category->dst(l)], c[1], c[4]});
        if (!m)
            throw Error(Errc::WitnessNotFunctorial, "middle column of '" + c1.category->morphism_name(l) +
                                                        "' is not a ladder");
        f.on_morphisms.push_back(*m);
    }
    check_functor(f);
    return f;
}

/// Transformation between the functors at the two ends of h-edge k and k+2.
inline NaturalTransformation edge_transformation(const ReductionWitness& w, const Functor& from, const Functor& to,
                                                 int k)
{
    const ChainCategory& c1 = w.tower[1];
    NaturalTransformation t{from, to, {}};
    for (Obj a = 0; a < c1.category->num_objects(); ++a) {
        const ZDiagram& z = w.on_objects[a];
        auto m = c1.find_ladder({from(a), to(a), z.h[k], z.h[k + 2]});
        if (!m)
            throw Error(Errc::WitnessShapeError, "h-edge " + std::to_string(k) + " is not a ladder");
        t.components.push_back(*m);
    }
    return t;
}

/**
 * extend: D_h -> Map(Δ^1_v, D)_h and forget back. forget∘extend is the
 * identity; extend∘forget is joined to the identity through the middle
 * column of the witness.
 */
inline HomotopyEquivalenceCertificate reduction_certificate(const ReductionWitness& w)
{
    HomotopyEquivalenceCertificate cert;
    cert.forward = chain_shift(w.tower, 1, ShiftKind::extend);
    cert.backward = chain_shift(w.tower, 1, ShiftKind::forget);
    Functor id = identity_functor(w.tower[1].category);
    Functor fu = compose(cert.forward, cert.backward);
    Functor mid = middle_functor(w);
    if (w.shape == ZShape::zig) {
        // id ⇒ Mid ⇐ FU
        cert.target_zigzag.push_back({edge_transformation(w, fu, mid, 1), true});
        cert.target_zigzag.push_back({edge_transformation(w, id, mid, 0), false});
    } else {
        // id ⇐ Mid ⇒ FU
        cert.target_zigzag.push_back({edge_transformation(w, mid, fu, 1), false});
        cert.target_zigzag.push_back({edge_transformation(w, mid, id, 0), true});
    }
    return cert;
}

struct ReductionReport {
    CertificateCheck certificate;
    QuasiIsoReport edge;

    bool verdict() const { return certificate.verified && edge.verdict; }

    std::string text() const
    {
        std::ostringstream os;
        os << "witness: PASS\n";
        os << "certificate: " << (certificate.verified ? "PASS" : "FAIL (" + certificate.failure + ")") << "\n";
        os << "edge map N D_h -> diag: " << edge.text() << "\n";
        return os.str();
    }
};

/// Validates the witness, certifies the chain-shift equivalence and runs the quasi-iso check on the edge map.
inline ReductionReport reduction_check(const ReductionWitness& w, int hcap)
{
    check_witness(w);
    ReductionReport r;
    r.certificate = verify_certificate(reduction_certificate(w));
    auto data = diagonal_data(w.d, hcap);
    r.edge = quasi_iso_check(data.h_edge);
    return r;
}

namespace detail {

inline ReductionWitness empty_witness(const DoublePtr& d, ZShape shape)
{
    ReductionWitness w;
    w.d = d;
    w.tower = chain_tower(d, 1);
    w.shape = shape;
    return w;
}

inline Mor need(std::optional<Mor> m, const std::string& what)
{
    if (!m)
        throw Error(Errc::NotBicommutative, what + " is missing");
    return *m;
}

}  // namespace detail

/// Witness for C_bi: the middle object is the target of the v-map.
inline ReductionWitness trivial_witness(const DoublePtr& d)
{
    const FiniteCategory& c = d->hcat();
    auto w = detail::empty_witness(d, ZShape::zig);
    const ChainCategory& c1 = w.tower[1];
    for (Obj a = 0; a < c1.category->num_objects(); ++a) {
        Mor alpha = c1.chains[a][0];
        Obj A = c.src(alpha), B = c.dst(alpha);
        Mor idb = c.identity(B);
        w.on_objects.push_back({{A, B, B, B, B, B}, {alpha, idb, idb, idb}, {alpha, idb, idb}});
    }
    for (Mor l = 0; l < c1.category->num_morphisms(); ++l) {
        Mor h0 = c1.ladders[l][0], h1 = c1.ladders[l][1];
        w.on_morphisms.push_back({h0, h1, h1, h1, h1, h1});
    }
    return w;
}

/**
 * For a v-map α: A -> B with components f: U -> U' and g: V' -> V, the zig
 * A -> [X <- U' -> V <- Y] <- B over B = B = B. The middle leg U' -> V is
 * g∘f_B.
 */
inline ZDiagram moduli_zigzag_v(const ModuliDouble& md, Mor alpha)
{
    const FiniteCategory& c = md.h.model.category();
    const FiniteCategory& v = *md.v.category;
    const FiniteCategory& h = *md.h.category;
    Obj ia = v.src(alpha), ib = v.dst(alpha);
    const auto& A = md.h.objects[ia];
    const auto& B = md.h.objects[ib];
    auto [f, g] = md.v.components[alpha];
    Obj mid = detail::need(md.h.find(B.u, c.compose(g, B.f), A.w), "middle object");
    ZDiagram z;
    z.objects = {ia, mid, ib, ib, ib, ib};
    z.h[0] = detail::need(md.h.find_morphism(ia, mid, f, c.identity(A.V)), "h-map A -> middle");
    z.h[1] = detail::need(md.h.find_morphism(ib, mid, c.identity(B.U), g), "h-map B -> middle");
    z.h[2] = z.h[3] = h.identity(ib);
    z.v[0] = alpha;
    z.v[1] = detail::need(md.v.find_morphism(mid, ib, c.identity(B.U), g), "v-map middle -> B");
    z.v[2] = v.identity(ib);
    for (int k = 0; k < 2; ++k)
        if (!moduli_square_commutes(md, detail::z_square(ZShape::zig, z, k)))
            throw Error(Errc::NotBicommutative, "square " + std::to_string(k) + " of the zig-zag on '" +
                                                    v.morphism_name(alpha) + "'");
    return z;
}

/**
 * For an h-map β: A -> B with components p: U -> U' and q: V -> V', the zag
 * A <- [X <- U -> V' <- Y] -> B over B = B = B, read in the transposed double
 * category so that the twisted maps run along rows.
 */
inline ZDiagram moduli_zigzag_h(const ModuliDouble& md, Mor beta)
{
    const FiniteCategory& c = md.h.model.category();
    const FiniteCategory& v = *md.v.category;
    const FiniteCategory& h = *md.h.category;
    Obj ia = h.src(beta), ib = h.dst(beta);
    const auto& A = md.h.objects[ia];
    const auto& B = md.h.objects[ib];
    auto [p, q] = md.h.components[beta];
    Obj mid = detail::need(md.h.find(A.u, c.compose(q, A.f), B.w), "middle object");
    ZDiagram z;
    z.objects = {ia, mid, ib, ib, ib, ib};
    z.h[0] = detail::need(md.v.find_morphism(mid, ia, c.identity(A.U), q), "v-map middle -> A");
    z.h[1] = detail::need(md.v.find_morphism(mid, ib, p, c.identity(B.V)), "v-map middle -> B");
    z.h[2] = z.h[3] = v.identity(ib);
    z.v[0] = beta;
    z.v[1] = detail::need(md.h.find_morphism(mid, ib, p, c.identity(B.V)), "h-map middle -> B");
    z.v[2] = h.identity(ib);
    for (int k = 0; k < 2; ++k) {
        Square s = detail::z_square(ZShape::zag, z, k);
        // transposed: rows are v-maps of the moduli double category
        if (!moduli_square_commutes(md, {s.left, s.right, s.top, s.bottom}))
            throw Error(Errc::NotBicommutative, "square " + std::to_string(k) + " of the zig-zag on '" +
                                                    h.morphism_name(beta) + "'");
    }
    return z;
}

inline ZDiagram moduli_zigzag(const ModuliDouble& md, Direction dir, Mor arrow)
{
    return dir == Direction::v ? moduli_zigzag_v(md, arrow) : moduli_zigzag_h(md, arrow);
}

/**
 * The moduli zig-zags assembled over every arrow and every ladder. For
 * Direction::v the witness lives on D and certifies the h edge map; for
 * Direction::h it lives on the transpose and certifies the v edge map.
 */
inline ReductionWitness moduli_witness(const ModuliDouble& md, Direction dir)
{
    const FiniteCategory& c = md.h.model.category();
    const bool vdir = dir == Direction::v;
    DoublePtr d = vdir ? md.d : share(transpose(*md.d));
    auto w = detail::empty_witness(d, vdir ? ZShape::zig : ZShape::zag);
    const ChainCategory& c1 = w.tower[1];
    const ModuliCategory& rows = vdir ? md.h : md.v;  // the category along rows of d
    for (Obj a = 0; a < c1.category->num_objects(); ++a)
        w.on_objects.push_back(moduli_zigzag(md, dir, c1.chains[a][0]));
    for (Mor l = 0; l < c1.category->num_morphisms(); ++l) {
        Mor l0 = c1.ladders[l][0], l1 = c1.ladders[l][1];
        const ZDiagram& za = w.on_objects[c1.category->src(l)];
        const ZDiagram& zb = w.on_objects[c1.category->dst(l)];
        // middle: U-part from one rung, V-part from the other
        Mor u_part = vdir ? rows.components[l1].first : rows.components[l0].first;
        Mor v_part = vdir ? rows.components[l0].second : rows.components[l1].second;
        Mor mid = detail::need(rows.find_morphism(za.objects[1], zb.objects[1], u_part, v_part),
                               "middle component of ladder '" + c1.category->morphism_name(l) + "'");
        (void)c;
        w.on_morphisms.push_back({l0, mid, l1, l1, l1, l1});
    }
    check_witness(w);
    return w;
}

}  // namespace nervekit
