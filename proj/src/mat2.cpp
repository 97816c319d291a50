#include "quadidem/mat2.hpp"

#include <sstream>

namespace quadidem {

Mat2::Mat2(QuadInt e11, QuadInt e12, QuadInt e21, QuadInt e22)
    : e11_(std::move(e11)), e12_(std::move(e12)), e21_(std::move(e21)), e22_(std::move(e22)) {
    if (e11_.ring() != e12_.ring() || e11_.ring() != e21_.ring() || e11_.ring() != e22_.ring()) {
        throw MixedRings();
    }
}

Mat2 Mat2::row(const QuadInt& x, const QuadInt& y) {
    QuadInt z = QuadInt::integer(x.ring(), 0);
    return Mat2(x, y, z, z);
}

Mat2 Mat2::zero(const RingSpec& ring) {
    QuadInt z = QuadInt::integer(ring, 0);
    return Mat2(z, z, z, z);
}

Mat2 Mat2::identity(const RingSpec& ring) {
    QuadInt z = QuadInt::integer(ring, 0);
    QuadInt o = QuadInt::integer(ring, 1);
    return Mat2(o, z, z, o);
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2(e11_ * o.e11_ + e12_ * o.e21_, e11_ * o.e12_ + e12_ * o.e22_,
                e21_ * o.e11_ + e22_ * o.e21_, e21_ * o.e12_ + e22_ * o.e22_);
}

Mat2 Mat2::operator-(const Mat2& o) const {
    return Mat2(e11_ - o.e11_, e12_ - o.e12_, e21_ - o.e21_, e22_ - o.e22_);
}

bool Mat2::operator==(const Mat2& o) const {
    return e11_ == o.e11_ && e12_ == o.e12_ && e21_ == o.e21_ && e22_ == o.e22_;
}

QuadInt Mat2::det() const { return e11_ * e22_ - e12_ * e21_; }

QuadInt Mat2::trace() const { return e11_ + e22_; }

bool Mat2::is_zero() const {
    return e11_.is_zero() && e12_.is_zero() && e21_.is_zero() && e22_.is_zero();
}

Mat2 Mat2::transpose() const { return Mat2(e11_, e21_, e12_, e22_); }

Mat2 Mat2::conj() const { return Mat2(e11_.conj(), e12_.conj(), e21_.conj(), e22_.conj()); }

Mat2 Mat2::conj_transpose() const { return conj().transpose(); }

std::string Mat2::str() const {
    std::ostringstream os;
    os << "(" << e11_ << ", " << e12_ << "; " << e21_ << ", " << e22_ << ")";
    return os.str();
}

IdempotentMat::IdempotentMat(Mat2 inner) : inner_(std::move(inner)) {
    if (!inner_.is_idempotent()) throw NotIdempotent();
}

IdempotentMat IdempotentMat::conjugated(const Mat2& p, const Mat2& p_inv) const {
    return IdempotentMat(p * inner_ * p_inv);
}

std::string rule_name(Rule rule) {
    switch (rule) {
        case Rule::ZeroCase: return "ZeroCase";
        case Rule::Swap: return "Swap";
        case Rule::IntegerXReduce: return "IntegerXReduce";
        case Rule::PeelCommonFactor: return "PeelCommonFactor";
        case Rule::WeakChain: return "WeakChain";
        case Rule::Step1: return "Step1";
        case Rule::Step2Shift: return "Step2Shift";
        case Rule::Step3ShiftA: return "Step3ShiftA";
        case Rule::Step3ShiftB: return "Step3ShiftB";
        case Rule::ColumnRowSplit: return "ColumnRowSplit";
        case Rule::Ansatz: return "Ansatz";
        case Rule::Oracle: return "Oracle";
    }
    return "?";
}

Mat2 FactorizationTrace::product() const {
    Mat2 acc = factors.empty() ? Mat2::identity(target.ring()) : factors.front().mat();
    for (size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i].mat();
    return acc;
}

bool FactorizationTrace::self_check() const {
    if (factors.empty()) return false;
    for (const IdempotentMat& f : factors) {
        if (!f.mat().is_idempotent()) return false;
    }
    return product() == target;
}

}  // namespace quadidem
