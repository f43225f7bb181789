#include "btt/transfer.hpp"

#include <algorithm>

namespace btt {

SparseMatrix Contraction::incl_at(int n, const DgLie& l) const
{
    auto it = incl.find(n);
    return it != incl.end() ? it->second : SparseMatrix(l.field(), l.dim(n), hdim(n));
}

SparseMatrix Contraction::proj_at(int n, const DgLie& l) const
{
    auto it = proj.find(n);
    return it != proj.end() ? it->second : SparseMatrix(l.field(), hdim(n), l.dim(n));
}

SparseMatrix Contraction::h_at(int n, const DgLie& l) const
{
    auto it = h.find(n);
    return it != h.end() ? it->second : SparseMatrix(l.field(), l.dim(n - 1), l.dim(n));
}

Contraction build_splitting(const DgLie& l)
{
    const FieldSpec& f = l.field();
    Contraction c;

    std::vector<int> degs;
    for (const auto& [n, d] : l.dims())
        if (d > 0)
            degs.push_back(n);

    // Per degree: boundaries B, homology representatives R, and the
    // pivot-deterministic preimages C of the next degree's boundaries.
    std::map<int, std::vector<Vec>> B, R, C;
    for (int n : degs) {
        int dim = l.dim(n);
        B[n] = image_basis(l.diff(n - 1));
        std::vector<Vec> Z = span_echelon(kernel_basis(l.diff(n)), dim, f);
        R[n] = complement_reps(Z, B[n]);
        std::vector<Vec> pre;
        for (const Vec& bnext : image_basis(l.diff(n))) {
            auto x = solve(l.diff(n), bnext);
            BTT_ASSERT(x.has_value(), "image basis vector has no preimage");
            pre.push_back(*x);
        }
        C[n] = std::move(pre);
    }

    for (int n : degs) {
        int dim = l.dim(n);
        int hd = static_cast<int>(R[n].size());
        c.hdims[n] = hd;

        // Change of basis: columns [B | R | C] equal the standard coordinates.
        std::vector<Vec> cols;
        cols.insert(cols.end(), B[n].begin(), B[n].end());
        cols.insert(cols.end(), R[n].begin(), R[n].end());
        cols.insert(cols.end(), C[n].begin(), C[n].end());
        BTT_ASSERT(static_cast<int>(cols.size()) == dim, "splitting does not fill the degree");
        SparseMatrix P = SparseMatrix::from_cols(f, cols, dim);

        SparseMatrix to_parts(f, dim, dim); // P^{-1}
        for (int j = 0; j < dim; ++j) {
            Vec ej = zero_vec(f, dim);
            ej[static_cast<size_t>(j)] = Scalar::one(f);
            auto x = solve(P, ej);
            BTT_ASSERT(x.has_value(), "splitting change of basis is singular");
            for (int i = 0; i < dim; ++i)
                if (!(*x)[static_cast<size_t>(i)].is_zero())
                    to_parts.set(i, j, (*x)[static_cast<size_t>(i)]);
        }

        const int nb = static_cast<int>(B[n].size());
        // q: select the R-part coordinates.
        SparseMatrix proj(f, hd, dim);
        for (int r = 0; r < hd; ++r)
            for (int j = 0; j < dim; ++j) {
                Scalar v = to_parts.at(nb + r, j);
                if (!v.is_zero())
                    proj.set(r, j, v);
            }
        c.proj.emplace(n, std::move(proj));

        if (hd > 0)
            c.incl.emplace(n, SparseMatrix::from_cols(f, R[n], dim));

        // h: send the B-part to its stored preimage in degree n-1.
        if (nb > 0 && l.dim(n - 1) > 0) {
            SparseMatrix hmat(f, l.dim(n - 1), dim);
            const auto& pre = C[n - 1];
            BTT_ASSERT(static_cast<int>(pre.size()) == nb, "preimage count mismatch");
            for (int j = 0; j < dim; ++j)
                for (int bidx = 0; bidx < nb; ++bidx) {
                    Scalar coef = to_parts.at(bidx, j);
                    if (coef.is_zero())
                        continue;
                    for (int i = 0; i < l.dim(n - 1); ++i) {
                        Scalar v = coef * pre[static_cast<size_t>(bidx)][static_cast<size_t>(i)];
                        if (!v.is_zero())
                            hmat.add_to(i, j, v);
                    }
                }
            if (!hmat.is_zero())
                c.h.emplace(n, std::move(hmat));
        }
    }
    return c;
}

Contraction build_contraction(const DgLie& l)
{
    BTT_REQUIRE(l.field().is_rationals(), "homotopy transfer runs in characteristic 0");
    return build_splitting(l);
}

namespace {

// Koszul sign of the permutation taking (x_1,...,x_n) to its σ-reordering,
// times the permutation sign (the antisymmetric-operation convention).
Scalar shuffle_sign(const FieldSpec& f, const std::vector<int>& perm, const std::vector<int>& degs)
{
    int exp = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                exp += 1 + degs[static_cast<size_t>(perm[i])] * degs[static_cast<size_t>(perm[j])];
    return exp % 2 ? -Scalar::one(f) : Scalar::one(f);
}

void enumerate_shuffles(int n, int k, const std::function<void(const std::vector<int>&)>& emit)
{
    std::vector<int> pick(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            std::vector<int> perm(pick.begin(), pick.end());
            for (int i = 0; i < n; ++i)
                if (std::find(pick.begin(), pick.end(), i) == pick.end())
                    perm.push_back(i);
            emit(perm);
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[static_cast<size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

struct Slot {
    int deg;
    int idx;
};

} // namespace

TransferredBrackets transferred_brackets(const DgLie& l, const Contraction& c, int arity_max)
{
    BTT_REQUIRE(l.field().is_rationals(), "homotopy transfer runs in characteristic 0");
    BTT_REQUIRE(arity_max >= 2 && arity_max <= 4, "transfer arity must be between 2 and 4");

    std::vector<Slot> hbasis;
    for (const auto& [n, hd] : c.hdims)
        for (int i = 0; i < hd; ++i)
            hbasis.push_back({n, i});

    const FieldSpec& f = l.field();
    const Scalar half = Scalar(f, 1) / Scalar(f, 2);

    // Values of λ_k and p_k = h∘λ_k on tuples of H basis elements (by
    // positions into hbasis), stored as (target L-degree, coordinates).
    using Tuple = std::vector<int>;
    std::map<int, std::map<Tuple, std::pair<int, Vec>>> lam, pmap;

    auto h_coords = [&](int n, const Vec& v) { return c.h_at(n, l).apply(v); };
    auto i_coords = [&](const Slot& s) {
        Vec e = zero_vec(f, c.hdim(s.deg));
        e[static_cast<size_t>(s.idx)] = Scalar::one(f);
        return c.incl_at(s.deg, l).apply(e);
    };

    std::function<std::pair<int, Vec>(const Tuple&)> lambda_of;
    std::function<std::pair<int, Vec>(const Tuple&)> p_of = [&](const Tuple& t) -> std::pair<int, Vec> {
        if (t.size() == 1)
            return {hbasis[static_cast<size_t>(t[0])].deg, i_coords(hbasis[static_cast<size_t>(t[0])])};
        auto it = pmap[static_cast<int>(t.size())].find(t);
        if (it != pmap[static_cast<int>(t.size())].end())
            return it->second;
        auto [deg, v] = lambda_of(t);
        std::pair<int, Vec> out{deg - 1, h_coords(deg, v)};
        pmap[static_cast<int>(t.size())][t] = out;
        return out;
    };

    lambda_of = [&](const Tuple& t) -> std::pair<int, Vec> {
        const int n = static_cast<int>(t.size());
        auto it = lam[n].find(t);
        if (it != lam[n].end())
            return it->second;
        std::vector<int> degs;
        int total = 0;
        for (int pos : t) {
            degs.push_back(hbasis[static_cast<size_t>(pos)].deg);
            total += hbasis[static_cast<size_t>(pos)].deg;
        }
        const int target = total + 2 - n;
        Vec acc = zero_vec(f, l.dim(target));
        for (int k = 1; k <= n - 1; ++k) {
            enumerate_shuffles(n, k, [&](const std::vector<int>& perm) {
                Tuple left, right;
                for (int i = 0; i < k; ++i)
                    left.push_back(t[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
                for (int i = k; i < n; ++i)
                    right.push_back(t[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
                auto [dl, vl] = p_of(left);
                auto [dr, vr] = p_of(right);
                Vec term = l.bracket(dl, vl, dr, vr);
                Scalar s = shuffle_sign(f, perm, degs) * half;
                for (size_t i = 0; i < acc.size(); ++i)
                    acc[i] += s * term[i];
            });
        }
        std::pair<int, Vec> out{target, std::move(acc)};
        lam[n][t] = out;
        return out;
    };

    TransferredBrackets tb;
    tb.arity_max = arity_max;
    const int nb = static_cast<int>(hbasis.size());
    for (int arity = 2; arity <= arity_max; ++arity) {
        std::vector<int> tuple(static_cast<size_t>(arity), 0);
        std::function<void(int)> rec = [&](int slot) {
            if (slot == arity) {
                Tuple t(tuple.begin(), tuple.end());
                auto [deg, v] = lambda_of(t);
                Vec cls = c.proj_at(deg, l).apply(v);
                TransferredBrackets::Key key;
                for (int pos : t)
                    key.push_back({hbasis[static_cast<size_t>(pos)].deg,
                                   hbasis[static_cast<size_t>(pos)].idx});
                tb.values[arity][key] = std::move(cls);
                return;
            }
            for (int i = 0; i < nb; ++i) {
                tuple[static_cast<size_t>(slot)] = i;
                rec(slot + 1);
            }
        };
        if (nb > 0)
            rec(0);
    }
    return tb;
}

} // namespace btt
