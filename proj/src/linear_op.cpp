#include "dcs/linear_op.hpp"

#include <memory>
#include <utility>

namespace dcs {

LinearOp compose(LinearOp a, LinearOp b) {
    if (b.out_dim != a.in_dim)
        throw ContractError("compose: inner dimensions disagree");
    LinearOp op;
    op.in_dim = b.in_dim;
    op.out_dim = a.out_dim;
    op.fwd = [a, b](std::span<const double> v, std::span<double> out) {
        std::vector<double> mid(b.out_dim, 0.0);
        b.fwd(v, mid);
        a.fwd(mid, out);
    };
    op.adj = [a, b](std::span<const double> u, std::span<double> out) {
        std::vector<double> mid(a.in_dim, 0.0);
        a.adj(u, mid);
        b.adj(mid, out);
    };
    return op;
}

LinearOp block_diag(LinearOp a, LinearOp b) {
    LinearOp op;
    op.in_dim = a.in_dim + b.in_dim;
    op.out_dim = a.out_dim + b.out_dim;
    op.fwd = [a, b](std::span<const double> v, std::span<double> out) {
        a.fwd(v.subspan(0, a.in_dim), out.subspan(0, a.out_dim));
        b.fwd(v.subspan(a.in_dim, b.in_dim), out.subspan(a.out_dim, b.out_dim));
    };
    op.adj = [a, b](std::span<const double> u, std::span<double> out) {
        a.adj(u.subspan(0, a.out_dim), out.subspan(0, a.in_dim));
        b.adj(u.subspan(a.out_dim, b.out_dim), out.subspan(a.in_dim, b.in_dim));
    };
    return op;
}

LinearOp vstack(LinearOp a, LinearOp b) {
    if (a.in_dim != b.in_dim)
        throw ContractError("vstack: input dimensions disagree");
    LinearOp op;
    op.in_dim = a.in_dim;
    op.out_dim = a.out_dim + b.out_dim;
    op.fwd = [a, b](std::span<const double> v, std::span<double> out) {
        a.fwd(v, out.subspan(0, a.out_dim));
        b.fwd(v, out.subspan(a.out_dim, b.out_dim));
    };
    op.adj = [a, b](std::span<const double> u, std::span<double> out) {
        std::vector<double> tmp(a.in_dim, 0.0);
        a.adj(u.subspan(0, a.out_dim), out);
        b.adj(u.subspan(a.out_dim, b.out_dim), tmp);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
    };
    return op;
}

LinearOp subtract(LinearOp a, LinearOp b) {
    if (a.in_dim != b.in_dim || a.out_dim != b.out_dim)
        throw ContractError("subtract: shapes disagree");
    LinearOp op;
    op.in_dim = a.in_dim;
    op.out_dim = a.out_dim;
    op.fwd = [a, b](std::span<const double> v, std::span<double> out) {
        std::vector<double> tmp(a.out_dim, 0.0);
        a.fwd(v, out);
        b.fwd(v, tmp);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= tmp[i];
    };
    op.adj = [a, b](std::span<const double> u, std::span<double> out) {
        std::vector<double> tmp(a.in_dim, 0.0);
        a.adj(u, out);
        b.adj(u, tmp);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= tmp[i];
    };
    return op;
}

LinearOp scale(double alpha, LinearOp a) {
    LinearOp op;
    op.in_dim = a.in_dim;
    op.out_dim = a.out_dim;
    op.fwd = [alpha, a](std::span<const double> v, std::span<double> out) {
        a.fwd(v, out);
        for (double& x : out) x *= alpha;
    };
    op.adj = [alpha, a](std::span<const double> u, std::span<double> out) {
        a.adj(u, out);
        for (double& x : out) x *= alpha;
    };
    return op;
}

LinearOp identity_op(std::size_t n) {
    LinearOp op;
    op.in_dim = n;
    op.out_dim = n;
    auto copy = [](std::span<const double> v, std::span<double> out) {
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    };
    op.fwd = copy;
    op.adj = copy;
    return op;
}

LinearOp zero_op(std::size_t in_dim, std::size_t out_dim) {
    LinearOp op;
    op.in_dim = in_dim;
    op.out_dim = out_dim;
    op.fwd = [](std::span<const double>, std::span<double> out) {
        for (double& x : out) x = 0.0;
    };
    op.adj = [](std::span<const double>, std::span<double> out) {
        for (double& x : out) x = 0.0;
    };
    return op;
}

LinearOp slice_op(std::size_t in_dim, std::size_t offset, std::size_t len) {
    if (offset + len > in_dim)
        throw ContractError("slice_op: slice exceeds input dimension");
    LinearOp op;
    op.in_dim = in_dim;
    op.out_dim = len;
    op.fwd = [offset, len](std::span<const double> v, std::span<double> out) {
        for (std::size_t i = 0; i < len; ++i) out[i] = v[offset + i];
    };
    op.adj = [offset, len](std::span<const double> u, std::span<double> out) {
        for (double& x : out) x = 0.0;
        for (std::size_t i = 0; i < len; ++i) out[offset + i] = u[i];
    };
    return op;
}

LinearOp dense_op(std::size_t m, std::size_t n, std::vector<double> row_major) {
    return dense_op(m, n, std::make_shared<const std::vector<double>>(std::move(row_major)));
}

LinearOp dense_op(std::size_t m, std::size_t n,
                  std::shared_ptr<const std::vector<double>> mat) {
    if (!mat || mat->size() != m * n)
        throw ContractError("dense_op: matrix storage size mismatch");
    LinearOp op;
    op.in_dim = n;
    op.out_dim = m;
    op.fwd = [mat, m, n](std::span<const double> v, std::span<double> out) {
        const double* a = mat->data();
        for (std::size_t i = 0; i < m; ++i) {
            const double* row = a + i * n;
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
            out[i] = acc;
        }
    };
    op.adj = [mat, m, n](std::span<const double> u, std::span<double> out) {
        const double* a = mat->data();
        for (double& x : out) x = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double* row = a + i * n;
            const double ui = u[i];
            for (std::size_t j = 0; j < n; ++j) out[j] += row[j] * ui;
        }
    };
    return op;
}

std::vector<double> materialize(const LinearOp& a) {
    std::vector<double> mat(a.out_dim * a.in_dim, 0.0);
    std::vector<double> e(a.in_dim, 0.0);
    for (std::size_t j = 0; j < a.in_dim; ++j) {
        e[j] = 1.0;
        std::vector<double> col = a.forward(e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < a.out_dim; ++i) mat[i * a.in_dim + j] = col[i];
    }
    return mat;
}

}  // namespace dcs
