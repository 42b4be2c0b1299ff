#include "cptk/lorentz.hpp"

#include <stdexcept>
#include <vector>

namespace cptk {

RepBlock::RepBlock(HalfInt a, HalfInt b, bool parity, bool charge)
    : A(a), B(b), parity_doubled(parity && !(a == b)), charge_doubled(charge) {
    if (A.twice < 0 || B.twice < 0)
        throw std::invalid_argument("RepBlock: representation labels must be >= 0");
}

std::size_t rep_dimension(const RepBlock& block) {
    std::size_t d = block.base_dimension();
    if (block.parity_doubled) d *= 2;
    if (block.charge_doubled) d *= 2;
    return d;
}

std::array<CMatrix, 3> su2_generators(HalfInt j) {
    const int n = j.multiplicity();
    // Basis index r corresponds to m = j - r, highest weight first.
    CMatrix jz(n, n), jplus(n, n), jminus(n, n);
    for (int r = 0; r < n; ++r) {
        jz.at(r, r) = Scalar(Rat(j.twice - 2 * r, 2));
        // J+ |j,m> = sqrt((j-m)(j+m+1)) |j,m+1>: entry at (r-1, r).
        if (r >= 1) {
            Rat radicand = Rat(r) * Rat(j.twice - r + 1);
            jplus.at(r - 1, r) = Scalar::sqrt_of(radicand);
        }
        // J- |j,m> = sqrt((j+m)(j-m+1)) |j,m-1>: entry at (r+1, r).
        if (r + 1 < n) {
            Rat radicand = Rat(j.twice - r) * Rat(r + 1);
            jminus.at(r + 1, r) = Scalar::sqrt_of(radicand);
        }
    }
    Scalar half(Rat(1, 2));
    Scalar minus_i_half = Scalar(QComplex(Rat(0), Rat(-1, 2)));
    CMatrix jx = half * (jplus + jminus);
    CMatrix jy = minus_i_half * (jplus - jminus);
    return {jx, jy, jz};
}

AlgebraGenerators ab_generators(HalfInt A, HalfInt B) {
    auto a = su2_generators(A);
    auto b = su2_generators(B);
    CMatrix ia = CMatrix::identity(A.multiplicity());
    CMatrix ib = CMatrix::identity(B.multiplicity());
    AlgebraGenerators g;
    Scalar minus_i = Scalar(QComplex(Rat(0), Rat(-1)));
    for (int i = 0; i < 3; ++i) {
        g.J[i] = kron(a[i], ib) + kron(ia, b[i]);
        g.K[i] = minus_i * (kron(a[i], ib) - kron(ia, b[i]));
    }
    return g;
}

namespace {

int epsilon(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    // parity of the permutation (i j k) of (0 1 2)
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

CMatrix commutator(const CMatrix& x, const CMatrix& y) {
    return x * y - y * x;
}

void check_family(const char* name, const std::array<CMatrix, 3>& X,
                  const std::array<CMatrix, 3>& Y,
                  const std::array<CMatrix, 3>& Z, const Scalar& coeff,
                  Verdict& verdict) {
    // Checks [X_i, Y_j] == coeff * sum_k e_ijk Z_k entrywise.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CMatrix lhs = commutator(X[i], Y[j]);
            CMatrix rhs(lhs.rows(), lhs.cols());
            for (int k = 0; k < 3; ++k) {
                int e = epsilon(i, j, k);
                if (e == 0) continue;
                rhs += Scalar(e) * (coeff * Z[k]);
            }
            if (lhs == rhs) continue;
            std::string loc = std::string(name) + "[" + std::to_string(i) +
                              "," + std::to_string(j) + "]";
            verdict.absorb(Verdict::fail(loc, rhs.str(), lhs.str()));
        }
    }
}

} // namespace

Verdict verify_lorentz_algebra(const AlgebraGenerators& g) {
    const std::size_t n = g.J[0].rows();
    for (const auto& m : g.J)
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("verify_lorentz_algebra: J dimension mismatch");
    for (const auto& m : g.K)
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("verify_lorentz_algebra: K dimension mismatch");

    Verdict v = Verdict::pass();
    Scalar i_unit = Scalar::i_unit();
    check_family("[J,J]", g.J, g.J, g.J, i_unit, v);
    check_family("[J,K]", g.J, g.K, g.K, i_unit, v);
    check_family("[K,K]", g.K, g.K, g.J, -i_unit, v);
    return v;
}

CMatrix pi_rotation_matrix(HalfInt j) {
    const int n = j.multiplicity();
    CMatrix y(n, n);
    for (int r = 0; r < n; ++r) {
        // column r holds m = j - r; the nonzero row is m' = -m, i.e. n-1-r,
        // with value (-1)^(j-m) = (-1)^r.
        y.at(n - 1 - r, r) = Scalar(r % 2 == 0 ? 1 : -1);
    }
    return y;
}

namespace {

// kappa * (Y_A (x) Y_B) for one irreducible (A,B) factor.
CMatrix time_reversal_factor(HalfInt A, HalfInt B) {
    CMatrix y = kron(pi_rotation_matrix(A), pi_rotation_matrix(B));
    if ((A + B).is_half_integer()) return Scalar::i_unit() * y;
    return y;
}

} // namespace

CMatrix discrete_matrix(DiscreteKind kind, const RepBlock& block,
                        const Phase& phase) {
    const Scalar nu = Scalar(phase.to_qcomplex());
    const std::size_t base = block.base_dimension();
    const std::size_t parity_dim = block.parity_doubled ? 2 * base : base;

    CMatrix per_charge;
    switch (kind) {
        case DiscreteKind::P: {
            if (block.A == block.B) {
                per_charge = CMatrix::identity(parity_dim);
            } else if (block.parity_doubled) {
                per_charge = CMatrix(parity_dim, parity_dim);
                per_charge.set_block(0, base, CMatrix::identity(base));
                per_charge.set_block(base, 0, CMatrix::identity(base));
            } else {
                throw std::invalid_argument(
                    "discrete_matrix: space inversion needs A == B or parity doubling");
            }
            break;
        }
        case DiscreteKind::C: {
            // Handled below over the charge pair; within one charge half it
            // acts as the identity.
            per_charge = CMatrix::identity(parity_dim);
            break;
        }
        case DiscreteKind::T: {
            CMatrix factor = time_reversal_factor(block.A, block.B);
            if (block.parity_doubled) {
                CMatrix swapped = time_reversal_factor(block.B, block.A);
                per_charge = direct_sum({factor, swapped});
            } else {
                per_charge = factor;
            }
            break;
        }
    }

    CMatrix full;
    if (block.charge_doubled) {
        if (kind == DiscreteKind::C) {
            full = direct_sum({per_charge, -per_charge});
        } else {
            full = direct_sum({per_charge, per_charge});
        }
    } else {
        full = per_charge;
    }
    return nu * full;
}

RealityClass reality_class(HalfInt j) {
    return j.is_integer() ? RealityClass::Real : RealityClass::Imaginary;
}

Verdict verify_t_reality(const CMatrix& D, HalfInt j) {
    RealityClass cls = reality_class(j);
    CMatrix expected = cls == RealityClass::Real ? D : -D;
    CMatrix found = D.conj();
    if (found == expected) return Verdict::pass();
    std::string law = cls == RealityClass::Real ? "conj(D) == D" : "conj(D) == -D";
    return Verdict::fail("time-reversal matrix, spin " + to_string(j),
                         law + " (" + to_string(cls) + " class)",
                         "conj(D) = " + found.str() + ", D = " + D.str());
}

std::string to_string(RealityClass c) {
    return c == RealityClass::Real ? "real" : "imaginary";
}

} // namespace cptk
