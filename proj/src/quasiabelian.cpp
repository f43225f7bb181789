#include "btt/quasiabelian.hpp"

#include "btt/linalg.hpp"

namespace btt {

DdCertificate dd_lemma(const BVStructure& b)
{
    const AlgebraRef& alg = b.algebra();
    const FieldSpec& f = alg->field();
    GradedOperator delta = b.delta1();
    GradedOperator dDelta = b.d() * delta; // degree 0

    DdCertificate cert;
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n) {
        int dim = alg->dim(n);
        if (dim == 0)
            continue;
        std::vector<Vec> ker_d = kernel_basis(b.d().block_or_zero(n));
        std::vector<Vec> im_delta = image_basis(delta.block_or_zero(n + 1));
        std::vector<Vec> ker_delta = kernel_basis(delta.block_or_zero(n));
        std::vector<Vec> im_d = image_basis(b.d().block_or_zero(n - 1));

        DdCertificate::DegreeData data;
        data.ker_d_im_delta = subspace_intersection(ker_d, im_delta, dim, f);
        data.ker_delta_im_d = subspace_intersection(ker_delta, im_d, dim, f);
        data.im_d_delta = image_basis(dDelta.block_or_zero(n));
        data.equal = subspaces_equal(data.ker_d_im_delta, data.ker_delta_im_d, dim, f) &&
                     subspaces_equal(data.ker_delta_im_d, data.im_d_delta, dim, f);
        if (!data.equal && cert.pass) {
            cert.pass = false;
            cert.failing_degree = n;
        }
        cert.degrees.emplace(n, std::move(data));
    }
    return cert;
}

ZigZagCertificate zigzag_certificate(const BVStructure& b)
{
    DdCertificate dd = dd_lemma(b);
    if (!dd.pass)
        throw input_error("zigzag certificate refused: dd-lemma fails at degree " +
                          std::to_string(*dd.failing_degree));

    const AlgebraRef& alg = b.algebra();
    const FieldSpec& f = alg->field();
    GradedOperator delta = b.delta1();

    ZigZagCertificate cert;

    // Ker(Δ) per degree, as echelon bases and inclusion matrices.
    std::map<int, std::vector<Vec>> K;
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n) {
        if (alg->dim(n) == 0)
            continue;
        K[n] = span_echelon(kernel_basis(delta.block_or_zero(n)), alg->dim(n), f);
        cert.ker_delta[n] = K[n];
        cert.inclusion.emplace(n, SparseMatrix::from_cols(f, K[n], alg->dim(n)));
    }

    // d restricted to Ker(Δ): solve for coordinates in the kernel basis.
    cert.subcomplex = true;
    std::map<int, SparseMatrix> dK;
    for (const auto& [n, basis] : K) {
        int kn = static_cast<int>(basis.size());
        int kn1 = K.count(n + 1) ? static_cast<int>(K[n + 1].size()) : 0;
        SparseMatrix m(f, kn1, kn);
        for (int c = 0; c < kn; ++c) {
            Vec img = b.d().block_or_zero(n).apply(basis[static_cast<size_t>(c)]);
            if (vec_is_zero(img))
                continue;
            if (kn1 == 0) {
                cert.subcomplex = false;
                continue;
            }
            auto x = solve(SparseMatrix::from_cols(f, K[n + 1], alg->dim(n + 1)), img);
            if (!x) {
                cert.subcomplex = false;
                continue;
            }
            for (int r = 0; r < kn1; ++r)
                if (!(*x)[static_cast<size_t>(r)].is_zero())
                    m.set(r, c, (*x)[static_cast<size_t>(r)]);
        }
        dK.emplace(n, std::move(m));
    }
    if (!cert.subcomplex) {
        cert.failure = "Ker(Δ) is not a subcomplex";
        return cert;
    }

    // H_Δ(A) = Ker(Δ)/Im(Δ) per degree and the projection Ker(Δ) -> H_Δ.
    std::map<int, Homology> HD;
    for (const auto& [n, basis] : K) {
        HD.emplace(n, Homology(delta.block_or_zero(n + 1), delta.block_or_zero(n)));
        cert.betti_H[n] = HD.at(n).dim();
        SparseMatrix proj(f, HD.at(n).dim(), static_cast<int>(basis.size()));
        for (size_t c = 0; c < basis.size(); ++c) {
            Vec coords = HD.at(n).project(basis[c]);
            for (size_t r = 0; r < coords.size(); ++r)
                if (!coords[r].is_zero())
                    proj.set(static_cast<int>(r), static_cast<int>(c), coords[r]);
        }
        cert.projection.emplace(n, std::move(proj));
    }

    // Chain-map identities, exactly.
    cert.inclusion_chain_map = true;
    cert.projection_chain_map = true;
    for (const auto& [n, basis] : K) {
        int kn1 = K.count(n + 1) ? static_cast<int>(K[n + 1].size()) : 0;
        SparseMatrix lhs = b.d().block_or_zero(n) * cert.inclusion.at(n);
        SparseMatrix rhs =
            kn1 ? cert.inclusion.at(n + 1) * dK.at(n)
                : SparseMatrix(f, alg->dim(n + 1), static_cast<int>(basis.size()));
        if (!(lhs == rhs))
            cert.inclusion_chain_map = false;
        // H_Δ carries the zero differential, so q must kill d(Ker Δ).
        if (kn1 && !(cert.projection.at(n + 1) * dK.at(n)).is_zero())
            cert.projection_chain_map = false;
    }

    // Betti numbers of (A, d) and (Ker Δ, d).
    std::map<int, Homology> HA, HK;
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n) {
        if (alg->dim(n) == 0)
            continue;
        HA.emplace(n, Homology(b.d().block_or_zero(n - 1), b.d().block_or_zero(n)));
        cert.betti_A[n] = HA.at(n).dim();
    }
    for (const auto& [n, basis] : K) {
        int kn1 = K.count(n + 1) ? 1 : 0;
        SparseMatrix din = K.count(n - 1) ? dK.at(n - 1)
                                          : SparseMatrix(f, static_cast<int>(basis.size()), 0);
        SparseMatrix dout = kn1 ? dK.at(n)
                                : SparseMatrix(f, 0, static_cast<int>(basis.size()));
        HK.emplace(n, Homology(din, dout));
        cert.betti_K[n] = HK.at(n).dim();
    }

    // Induced maps on homology have full rank and the Betti numbers agree.
    cert.inclusion_qis = true;
    cert.projection_qis = true;
    for (const auto& [n, hk] : HK) {
        int bA = cert.betti_A.count(n) ? cert.betti_A.at(n) : 0;
        int bH = cert.betti_H.count(n) ? cert.betti_H.at(n) : 0;
        if (hk.dim() != bA)
            cert.inclusion_qis = false;
        if (hk.dim() != bH)
            cert.projection_qis = false;
        if (hk.dim() == 0)
            continue;
        std::vector<Vec> incl_classes, proj_classes;
        for (const Vec& rep : hk.representatives()) {
            Vec a = cert.inclusion.at(n).apply(rep);
            incl_classes.push_back(HA.at(n).project(a));
            proj_classes.push_back(cert.projection.at(n).apply(rep));
        }
        if (bA == 0 || span_rank(incl_classes, bA, f) != hk.dim())
            cert.inclusion_qis = false;
        if (bH == 0 || span_rank(proj_classes, bH, f) != hk.dim())
            cert.projection_qis = false;
    }

    // Brackets of Ker(Δ) elements land in Im(Δ), hence die in H_Δ(A).
    cert.brackets_in_im_delta = true;
    for (const auto& [p, bp] : K)
        for (const auto& [q, bq] : K) {
            int target = p + q - 1;
            if (alg->dim(target) == 0)
                continue;
            std::vector<Vec> im_delta = image_basis(delta.block_or_zero(target + 1));
            for (const Vec& x : bp)
                for (const Vec& y : bq) {
                    Element ex = Element::from_coords(alg, p, x);
                    Element ey = Element::from_coords(alg, q, y);
                    Element br = derived_bracket(b, ex, ey);
                    if (br.is_zero())
                        continue;
                    if (!in_span(br.coords(target), im_delta, alg->dim(target), f))
                        cert.brackets_in_im_delta = false;
                }
        }

    cert.valid = cert.subcomplex && cert.inclusion_chain_map && cert.projection_chain_map &&
                 cert.inclusion_qis && cert.projection_qis && cert.brackets_in_im_delta;
    if (!cert.valid && cert.failure.empty())
        cert.failure = "zigzag identities failed";
    return cert;
}

InducedBracket induced_bracket_on_homology(const BVStructure& b)
{
    const AlgebraRef& alg = b.algebra();
    InducedBracket out;

    std::map<int, Homology> H;
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n) {
        if (alg->dim(n) == 0)
            continue;
        H.emplace(n, Homology(b.d().block_or_zero(n - 1), b.d().block_or_zero(n)));
        out.homology_dims[n] = H.at(n).dim();
    }

    for (const auto& [p, hp] : H)
        for (const auto& [q, hq] : H) {
            if (hp.dim() == 0 || hq.dim() == 0)
                continue;
            int target = p + q - 1;
            std::vector<std::vector<Vec>> table(static_cast<size_t>(hp.dim()));
            for (int i = 0; i < hp.dim(); ++i) {
                for (int j = 0; j < hq.dim(); ++j) {
                    Element x = Element::from_coords(alg, p, hp.representatives()[static_cast<size_t>(i)]);
                    Element y = Element::from_coords(alg, q, hq.representatives()[static_cast<size_t>(j)]);
                    Element br = derived_bracket(b, x, y);
                    BTT_ASSERT(b.d()(br).is_zero(), "bracket of closed elements is not closed");
                    Vec cls;
                    auto ht = H.find(target);
                    if (ht == H.end() || ht->second.dim() == 0 || br.is_zero())
                        cls = zero_vec(alg->field(), ht == H.end() ? 0 : ht->second.dim());
                    else
                        cls = ht->second.project(br.coords(target));
                    if (!vec_is_zero(cls))
                        out.is_zero = false;
                    table[static_cast<size_t>(i)].push_back(std::move(cls));
                }
            }
            out.values.emplace(std::make_pair(p, q), std::move(table));
        }
    return out;
}

} // namespace btt
