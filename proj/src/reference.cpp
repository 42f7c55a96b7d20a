#include "slc/reference.hpp"

#include <vector>

namespace slc {

namespace {

// sign of the permutation mapping tuple A onto tuple B (both distinct);
// 0 if they are not the same set
int delta_sign(const std::vector<int>& A, const std::vector<int>& B) {
    int m = static_cast<int>(A.size());
    std::vector<int> perm(m, -1);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b)
            if (B[b] == A[a]) perm[a] = b;
        if (perm[a] < 0) return 0;
    }
    int sign = 1;
    std::vector<char> seen(m, 0);
    for (int a = 0; a < m; ++a) {
        if (seen[a]) continue;
        int len = 0, c = a;
        while (!seen[c]) {
            seen[c] = 1;
            c = perm[c];
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

bool has_duplicate(const std::vector<int>& t) {
    for (size_t a = 0; a < t.size(); ++a)
        for (size_t b = a + 1; b < t.size(); ++b)
            if (t[a] == t[b]) return true;
    return false;
}

// all k-tuples over {0..n-1} with distinct entries, none equal to `exclude`
std::vector<std::vector<int>> distinct_tuples(int n, int k, int exclude) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(static_cast<size_t>(k), 0);
    while (true) {
        bool ok = !has_duplicate(t);
        for (int v : t)
            if (v == exclude) ok = false;
        if (ok) out.push_back(t);
        int a = k - 1;
        while (a >= 0 && t[a] == n - 1) t[a--] = 0;
        if (a < 0) break;
        ++t[a];
    }
    return out;
}

double factorial(int k) {
    double f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

} // namespace

Eigen::MatrixXd newton_tensor_minor(const Eigen::MatrixXd& h, int k) {
    int n = static_cast<int>(h.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    if (k == 0) return Eigen::MatrixXd::Identity(n, n);
    int m = k + 1;
    if (k < 0 || m > n) return out; // includes T_n = 0

    // iterate subsets U of size m; accumulate cofactors of det(h[U,U])
    std::vector<int> U(static_cast<size_t>(m));
    for (int a = 0; a < m; ++a) U[a] = a;
    while (true) {
        Eigen::MatrixXd A(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) A(a, b) = h(U[a], U[b]);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                Eigen::MatrixXd M(m - 1, m - 1);
                for (int r = 0, rr = 0; r < m; ++r) {
                    if (r == a) continue;
                    for (int c = 0, cc = 0; c < m; ++c) {
                        if (c == b) continue;
                        M(rr, cc++) = A(r, c);
                    }
                    ++rr;
                }
                double cof = ((a + b) % 2 ? -1.0 : 1.0) *
                             (m > 1 ? M.determinant() : 1.0);
                out(U[a], U[b]) += cof;
            }
        int a = m - 1;
        while (a >= 0 && U[a] == n - m + a) --a;
        if (a < 0) break;
        ++U[a];
        for (int b = a + 1; b < m; ++b) U[b] = U[b - 1] + 1;
    }
    return out;
}

Eigen::MatrixXd newton_tensor_delta(const Eigen::MatrixXd& h, int k) {
    int n = static_cast<int>(h.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    if (k < 0 || k > n) return out;
    if (k == 0) return Eigen::MatrixXd::Identity(n, n);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0;
            for (const auto& I : distinct_tuples(n, k, i)) {
                std::vector<int> A(static_cast<size_t>(k) + 1);
                A[0] = i;
                for (int a = 0; a < k; ++a) A[static_cast<size_t>(a) + 1] = I[a];
                for (const auto& J : distinct_tuples(n, k, j)) {
                    std::vector<int> B(static_cast<size_t>(k) + 1);
                    B[0] = j;
                    for (int a = 0; a < k; ++a) B[static_cast<size_t>(a) + 1] = J[a];
                    int sg = delta_sign(A, B);
                    if (sg == 0) continue;
                    double prod = 1;
                    for (int a = 0; a < k; ++a) prod *= h(I[a], J[a]);
                    acc += sg * prod;
                }
            }
            out(i, j) = acc / factorial(k);
        }
    return out;
}

} // namespace slc
