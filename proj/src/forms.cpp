#include "quinrep/forms.hpp"

#include <sstream>

namespace quinrep {

std::vector<Wide> leading_minors(const Matrix& g)
{
    const Eigen::Index n = g.rows();
    Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic> m = g.cast<Wide>();
    std::vector<Wide> minors;
    Wide prev = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Wide pivot = m(k, k);
        minors.push_back(pivot);
        if (pivot == 0)
            break;
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                m(i, j) = (pivot * m(i, j) - m(i, k) * m(k, j)) / prev;
        prev = pivot;
    }
    return minors;
}

bool is_positive_definite(const Matrix& g)
{
    if (g.rows() != g.cols() || g.rows() == 0)
        return false;
    const std::vector<Wide> minors = leading_minors(g);
    if (static_cast<Eigen::Index>(minors.size()) != g.rows())
        return false;
    return std::all_of(minors.begin(), minors.end(), [](Wide d) { return d > 0; });
}

GramLattice::GramLattice(Matrix gram) : gram_(std::move(gram))
{
    if (gram_.rows() != gram_.cols())
        throw std::invalid_argument("Gram matrix must be square");
    if (gram_.rows() < 1 || gram_.rows() > kMaxRank)
        throw std::invalid_argument("Gram matrix rank must be between 1 and 5");
    if (gram_ != gram_.transpose())
        throw std::invalid_argument("Gram matrix must be symmetric");
    if (!quinrep::is_positive_definite(gram_))
        throw std::invalid_argument("Gram matrix must be positive definite");
    determinant_ = static_cast<Int>(leading_minors(gram_).back());
}

GramLattice GramLattice::diagonal(std::span<const Int> entries)
{
    Matrix g = Matrix::Zero(static_cast<Eigen::Index>(entries.size()),
                            static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
    return GramLattice(std::move(g));
}

GramLattice GramLattice::diagonal(std::initializer_list<Int> entries)
{
    return diagonal(std::span<const Int>(entries.begin(), entries.size()));
}

GramLattice GramLattice::orthogonal_sum(const GramLattice& x, const GramLattice& y)
{
    const Eigen::Index n = x.rank(), m = y.rank();
    Matrix g = Matrix::Zero(n + m, n + m);
    g.topLeftCorner(n, n) = x.gram();
    g.bottomRightCorner(m, m) = y.gram();
    return GramLattice(std::move(g));
}

bool GramLattice::is_diagonal() const
{
    return gram_.isDiagonal();
}

GramLattice GramLattice::scaled(Int k) const
{
    return GramLattice(gram_ * k);
}

std::string GramLattice::describe() const
{
    std::ostringstream os;
    if (is_diagonal()) {
        os << "<";
        for (int i = 0; i < rank(); ++i)
            os << (i ? "," : "") << gram_(i, i);
        os << ">";
        return os.str();
    }
    os << "[";
    for (int i = 0; i < rank(); ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < rank(); ++j)
            os << (j ? "," : "") << gram_(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace quinrep
