#include "cptk/cmatrix.hpp"

#include <sstream>

namespace cptk {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<Scalar>& entries) {
    CMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
    return m;
}

CMatrix CMatrix::from_rows(
    std::initializer_list<std::initializer_list<Scalar>> rows) {
    std::size_t nr = rows.size();
    std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
    CMatrix m(nr, nc);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != nc)
            throw std::invalid_argument("CMatrix::from_rows: ragged rows");
        std::size_t c = 0;
        for (const auto& s : row) m.at(r, c++) = s;
        ++r;
    }
    return m;
}

CMatrix CMatrix::operator-() const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
    return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("CMatrix: dimension mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("CMatrix: dimension mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("CMatrix: dimension mismatch in *");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& ark = a.data_[r * a.cols_ + k];
            if (ark.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const Scalar& bkc = b.data_[k * b.cols_ + c];
                if (bkc.is_zero()) continue;
                out.data_[r * out.cols_ + c] += ark * bkc;
            }
        }
    }
    return out;
}

CMatrix operator*(const Scalar& s, CMatrix m) {
    for (auto& e : m.data_) e = s * e;
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

CMatrix CMatrix::conj() const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = data_[i].conj();
    return out;
}

Scalar CMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("CMatrix::trace: not square");
    Scalar t;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

bool CMatrix::is_zero() const {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

bool CMatrix::is_real() const {
    for (const auto& e : data_)
        if (!e.is_real()) return false;
    return true;
}

bool CMatrix::is_imaginary() const {
    for (const auto& e : data_)
        if (!e.is_imaginary()) return false;
    return true;
}

CMatrix CMatrix::inverse() const {
    if (!is_square())
        throw std::invalid_argument("CMatrix::inverse: not square");
    std::size_t n = rows_;
    CMatrix work = *this;
    CMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw std::domain_error("CMatrix::inverse: singular");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(work.at(pivot, c), work.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        }
        Scalar scale = work.at(col, col).inverse();
        for (std::size_t c = 0; c < n; ++c) {
            work.at(col, c) = scale * work.at(col, c);
            inv.at(col, c) = scale * inv.at(col, c);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work.at(r, col).is_zero()) continue;
            Scalar factor = work.at(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                work.at(r, c) -= factor * work.at(col, c);
                inv.at(r, c) -= factor * inv.at(col, c);
            }
        }
    }
    return inv;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& src) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
        throw std::out_of_range("CMatrix::set_block: block exceeds bounds");
    for (std::size_t r = 0; r < src.rows_; ++r)
        for (std::size_t c = 0; c < src.cols_; ++c)
            at(r0 + r, c0 + c) = src.at(r, c);
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                       std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw std::out_of_range("CMatrix::block: block exceeds bounds");
    CMatrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out.at(r, c) = at(r0 + r, c0 + c);
    return out;
}

std::string CMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ", ";
            os << at(r, c).str();
        }
    }
    os << "]";
    return os.str();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            const Scalar& s = a.at(ra, ca);
            if (s.is_zero()) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    out.at(ra * b.rows() + rb, ca * b.cols() + cb) =
                        s * b.at(rb, cb);
        }
    return out;
}

CMatrix direct_sum(std::span<const CMatrix> blocks) {
    if (blocks.empty())
        throw std::invalid_argument("direct_sum: empty sequence");
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    CMatrix out(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        out.set_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

CMatrix direct_sum(std::initializer_list<CMatrix> blocks) {
    std::vector<CMatrix> v(blocks);
    return direct_sum(std::span<const CMatrix>(v));
}

} // namespace cptk
