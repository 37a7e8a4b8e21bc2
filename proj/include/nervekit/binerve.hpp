/**
 * Binerve of a double category, its diagonal, the two edge maps into the
 * diagonal, and the diagonal-chain splitting χ for trivial double
 * categories.
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "double_category.hpp"
#include "nerve.hpp"
#include "simplicial.hpp"

namespace nervekit {

/**
 * An element of level (p, q): a (q+1) x (p+1) grid of objects with h-maps
 * along rows and v-maps down columns.
 */
struct SquareArray {
    int p = 0;
    int q = 0;
    std::vector<Obj> objects;  // row-major, (q+1) x (p+1)
    std::vector<Mor> hmaps;    // (q+1) x p: row i, position j goes X_{i,j} -> X_{i,j+1}
    std::vector<Mor> vmaps;    // q x (p+1): row i, column j goes X_{i,j} -> X_{i+1,j}

    Obj object(int i, int j) const { return objects[static_cast<std::size_t>(i) * (p + 1) + j]; }
    Mor h(int i, int j) const { return hmaps[static_cast<std::size_t>(i) * p + j]; }
    Mor v(int i, int j) const { return vmaps[static_cast<std::size_t>(i) * (p + 1) + j]; }
};

/**
 * Column q of the bisimplicial set is the nerve of Map(Δ^q_v, D)_h; vertical
 * operators are the nerves of the chain face and degeneracy functors.
 */
struct Binerve {
    DoublePtr base;
    ChainTower tower;
    std::vector<Nerve> columns;  // nerve of tower[q], cap pcap
    BisimplicialSet sset;

    SquareArray array(int p, int q, Index s) const
    {
        const ChainCategory& cc = tower[q];
        const Nerve& nv = columns[q];
        SquareArray a;
        a.p = p;
        a.q = q;
        std::vector<Obj> cols;  // chain-category objects along the row direction
        auto chain = nv.chain(p, s);
        if (p == 0) {
            cols.push_back(static_cast<Obj>(s));
        } else {
            cols.push_back(cc.category->src(chain.front()));
            for (Mor m : chain)
                cols.push_back(cc.category->dst(m));
        }
        a.objects.resize(static_cast<std::size_t>(q + 1) * (p + 1));
        a.hmaps.resize(static_cast<std::size_t>(q + 1) * p);
        a.vmaps.resize(static_cast<std::size_t>(q) * (p + 1));
        for (int j = 0; j <= p; ++j) {
            for (int i = 0; i <= q; ++i)
                a.objects[static_cast<std::size_t>(i) * (p + 1) + j] = cc.vertices[cols[j]][i];
            for (int i = 0; i < q; ++i)
                a.vmaps[static_cast<std::size_t>(i) * (p + 1) + j] = cc.chains[cols[j]][i];
        }
        for (int j = 0; j < p; ++j)
            for (int i = 0; i <= q; ++i)
                a.hmaps[static_cast<std::size_t>(i) * p + j] = cc.ladders[chain[j]][i];
        return a;
    }
};

inline Binerve binerve(const DoublePtr& d, int pcap, int qcap)
{
    if (pcap < 0 || qcap < 0)
        throw Error(Errc::CapTooSmall, "caps must be >= 0");
    Binerve bn;
    bn.base = d;
    bn.tower = chain_tower(d, qcap);
    for (int q = 0; q <= qcap; ++q)
        bn.columns.push_back(nerve(bn.tower[q].category, pcap));

    BisimplicialSet& b = bn.sset;
    b.pcap = pcap;
    b.qcap = qcap;
    b.counts.assign(pcap + 1, std::vector<Index>(qcap + 1, 0));
    b.hface.assign(pcap + 1, std::vector<std::vector<Table>>(qcap + 1));
    b.hdeg = b.vface = b.vdeg = b.hface;
    for (int q = 0; q <= qcap; ++q) {
        const SimplicialSet& col = *bn.columns[q].simplicial;
        for (int p = 0; p <= pcap; ++p) {
            b.counts[p][q] = col.size(p);
            for (int i = 0; p > 0 && i <= p; ++i)
                b.hface[p][q].push_back(col.face_table(p, i));
            for (int i = 0; p < pcap && i <= p; ++i)
                b.hdeg[p][q].push_back(col.degeneracy_table(p, i));
        }
    }
    for (int q = 0; q <= qcap; ++q) {
        for (int i = 0; q > 0 && i <= q; ++i) {
            Functor f = chain_face(bn.tower, q, i);
            SimplicialMap m = nerve_map(f, bn.columns[q], bn.columns[q - 1]);
            for (int p = 0; p <= pcap; ++p)
                b.vface[p][q].push_back(std::move(m.levels[p]));
        }
        for (int i = 0; q < qcap && i <= q; ++i) {
            Functor f = chain_degeneracy(bn.tower, q, i);
            SimplicialMap m = nerve_map(f, bn.columns[q], bn.columns[q + 1]);
            for (int p = 0; p <= pcap; ++p)
                b.vdeg[p][q].push_back(std::move(m.levels[p]));
        }
    }
    return bn;
}

/// Diagonal plus both edge maps, computed once for a square cap.
struct DiagonalData {
    Binerve binerve;
    SSetPtr diagonal;
    SimplicialMap h_edge;  // N D_h -> diag
    SimplicialMap v_edge;  // N D_v -> diag
};

inline DiagonalData diagonal_data(const DoublePtr& d, int cap)
{
    DiagonalData out{binerve(d, cap, cap), nullptr, {}, {}};
    out.diagonal = share(diag(out.binerve.sset));
    out.h_edge = edge_map(out.binerve.sset, Direction::h, out.diagonal);
    // the q = 0 column is literally the nerve of D_h
    out.h_edge.source = out.binerve.columns[0].simplicial;
    out.v_edge = edge_map(out.binerve.sset, Direction::v, out.diagonal);
    return out;
}

/// The edge map N D_h -> diag(N D) or N D_v -> diag(N D).
inline SimplicialMap edge_map(const DoublePtr& d, Direction dir, int cap)
{
    auto data = diagonal_data(d, cap);
    return dir == Direction::h ? data.h_edge : data.v_edge;
}

/**
 * χ: diag(N C_bi) -> N C, sending an n x n commutative array to its diagonal
 * chain X_00 -> X_11 -> ... -> X_nn. Each diagonal step is computed
 * top-then-right and checked against left-then-bottom.
 */
inline SimplicialMap chi(const DiagonalData& data, const Nerve& target)
{
    const Binerve& bn = data.binerve;
    const FiniteCategory& c = bn.base->hcat();
    if (bn.base->hptr() != bn.base->vptr())
        throw Error(Errc::InvalidArgument, "chi is defined on trivial double categories");
    const int cap = bn.sset.pcap;
    SimplicialMap f{data.diagonal, target.simplicial, {}};
    for (int n = 0; n <= cap; ++n) {
        Table t(bn.sset.counts[n][n]);
        for (Index s = 0; s < t.size(); ++s) {
            SquareArray a = bn.array(n, n, s);
            if (n == 0) {
                t[s] = a.object(0, 0);
                continue;
            }
            std::vector<Mor> diagonal;
            for (int i = 0; i < n; ++i) {
                Mor top_right = c.compose(a.v(i, i + 1), a.h(i, i));
                Mor left_bottom = c.compose(a.h(i + 1, i), a.v(i, i));
                if (top_right != left_bottom)
                    throw Error(Errc::NotBicommutative, "array square at (" + std::to_string(i) + "," +
                                                            std::to_string(i) + ") does not commute");
                diagonal.push_back(top_right);
            }
            t[s] = target.find(diagonal);
        }
        f.levels.push_back(std::move(t));
    }
    check_smap(f);
    return f;
}

}  // namespace nervekit
