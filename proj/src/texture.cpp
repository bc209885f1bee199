#include <softsel/texture.hpp>

#include <softsel/error.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace softsel::texture {

using imaging::BinaryMask;
using imaging::GrayImage;

QuantizedImage quantize(const GrayImage& image, const std::optional<BinaryMask>& mask, std::size_t levels) {
    if (levels < 2 || levels > 256) {
        throw InvalidArgument("quantize: levels must lie in [2,256], got " + std::to_string(levels));
    }
    if (mask && !mask->matches(image)) {
        throw InvalidArgument("quantize: mask dimensions differ from image");
    }
    BinaryMask m = mask ? *mask : BinaryMask::full(image);
    GrayImage out(image.width(), image.height());
    for (std::size_t r = 0; r < image.height(); ++r) {
        for (std::size_t c = 0; c < image.width(); ++c) {
            if (m.at(r, c)) {
                out.at(r, c) = static_cast<std::uint8_t>(static_cast<std::size_t>(image.at(r, c)) * levels / 256);
            }
        }
    }
    return {std::move(out), std::move(m), levels};
}

JointMatrix::JointMatrix(std::size_t levels) : levels_(levels), cells_(levels * levels, 0.0) {}

JointMatrix::JointMatrix(std::size_t levels, std::vector<double> cells)
    : levels_(levels), cells_(std::move(cells)) {
    if (cells_.size() != levels * levels) {
        throw InvalidArgument("JointMatrix: expected " + std::to_string(levels * levels) + " cells");
    }
    if (std::any_of(cells_.begin(), cells_.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); })) {
        throw InvalidArgument("JointMatrix: cells must be finite and non-negative");
    }
}

double JointMatrix::total() const { return std::accumulate(cells_.begin(), cells_.end(), 0.0); }

void JointMatrix::normalize() {
    const double t = total();
    if (t <= 0.0) {
        throw EmptyMatrixError("matrix has no mass to normalize");
    }
    for (auto& v : cells_) {
        v /= t;
    }
}

Displacement offset(Direction direction, std::size_t distance) {
    const int d = static_cast<int>(distance);
    switch (direction) {
        case Direction::Deg0: return {0, d};
        case Direction::Deg45: return {-d, d};
        case Direction::Deg90: return {-d, 0};
        case Direction::Deg135: return {-d, -d};
    }
    return {0, d};
}

namespace {

// Calls visit(first_level, second_level) for every in-mask pair (p, p + off).
void for_each_pair(const QuantizedImage& q, Displacement off,
                   const std::function<void(std::size_t, std::size_t)>& visit) {
    const auto h = static_cast<long>(q.image.height());
    const auto w = static_cast<long>(q.image.width());
    for (long r = 0; r < h; ++r) {
        for (long c = 0; c < w; ++c) {
            const long r2 = r + off.dr;
            const long c2 = c + off.dc;
            if (r2 < 0 || c2 < 0 || r2 >= h || c2 >= w) {
                continue;
            }
            const auto ur = static_cast<std::size_t>(r), uc = static_cast<std::size_t>(c);
            const auto ur2 = static_cast<std::size_t>(r2), uc2 = static_cast<std::size_t>(c2);
            if (!q.mask.at(ur, uc) || !q.mask.at(ur2, uc2)) {
                continue;
            }
            visit(q.image.at(ur, uc), q.image.at(ur2, uc2));
        }
    }
}

void require_levels(const QuantizedImage& q) {
    if (q.levels < 2 || q.levels > 256) {
        throw InvalidArgument("quantized image has invalid level count");
    }
    if (!q.mask.matches(q.image)) {
        throw InvalidArgument("quantized image mask dimensions differ");
    }
}

}  // namespace

CooccurrenceMatrix glcm(const QuantizedImage& image, Direction direction, std::size_t distance, bool symmetric) {
    require_levels(image);
    if (distance == 0) {
        throw InvalidArgument("glcm: distance must be >= 1");
    }
    JointMatrix p(image.levels);
    for_each_pair(image, offset(direction, distance), [&](std::size_t a, std::size_t b) {
        if (a >= image.levels || b >= image.levels) {
            throw InvalidArgument("glcm: pixel level exceeds quantization levels");
        }
        p(a, b) += 1.0;
        if (symmetric) {
            p(b, a) += 1.0;
        }
    });
    if (p.total() == 0.0) {
        throw EmptyMatrixError("glcm: no in-mask pixel pairs");
    }
    p.normalize();
    return {std::move(p), direction, distance};
}

namespace {

void accumulate_differences(const QuantizedImage& image, Displacement d, JointMatrix& p) {
    for_each_pair(image, d, [&](std::size_t a, std::size_t b) {
        if (a >= image.levels || b >= image.levels) {
            throw InvalidArgument("gldm: pixel level exceeds quantization levels");
        }
        p(a, a > b ? a - b : b - a) += 1.0;
    });
}

}  // namespace

DifferenceMatrix gldm(const QuantizedImage& image, Displacement displacement) {
    require_levels(image);
    if (displacement.dr == 0 && displacement.dc == 0) {
        throw InvalidArgument("gldm: zero displacement");
    }
    JointMatrix p(image.levels);
    accumulate_differences(image, displacement, p);
    if (p.total() == 0.0) {
        throw EmptyMatrixError("gldm: no in-mask pixel pairs");
    }
    p.normalize();
    return {std::move(p), {displacement}};
}

DifferenceMatrix gldm_all(const QuantizedImage& image, std::size_t distance) {
    require_levels(image);
    if (distance == 0) {
        throw InvalidArgument("gldm: distance must be >= 1");
    }
    JointMatrix p(image.levels);
    std::vector<Displacement> used;
    for (const auto dir : kDirections) {
        used.push_back(offset(dir, distance));
        accumulate_differences(image, used.back(), p);
    }
    if (p.total() == 0.0) {
        throw EmptyMatrixError("gldm: no in-mask pixel pairs");
    }
    p.normalize();
    return {std::move(p), std::move(used)};
}

// =============================================================================
// Features
// =============================================================================

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = [] {
        std::array<std::string, kFeatureCount> n;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            n[i] = "f" + std::to_string(i + 1);
        }
        return n;
    }();
    return names;
}

const std::array<std::string_view, kFeatureCount>& feature_labels() {
    static constexpr std::array<std::string_view, kFeatureCount> labels = {
        "angular second moment", "contrast", "correlation", "sum of squares: variance",
        "inverse difference moment", "sum average", "sum variance", "sum entropy", "entropy",
        "difference variance", "difference entropy", "information measure of correlation I",
        "information measure of correlation II", "maximal correlation coefficient", "cluster shade",
        "cluster prominence", "product moment", "inertia", "mean"};
    return labels;
}

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Second-largest eigenvalue of Q(i,j) = sum_k p(i,k) p(j,k) / (px(i) py(k)).
// Q = Dx^-1 P Dy^-1 P^T is similar to the symmetric
// S = Dx^-1/2 P Dy^-1 P^T Dx^-1/2 on rows with px > 0; other rows of Q are
// zero and contribute eigenvalue 0.
double second_eigenvalue(const JointMatrix& p, const std::vector<double>& px, const std::vector<double>& py) {
    const auto g = p.levels();
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < g; ++i) {
        if (px[i] > 0.0) {
            rows.push_back(i);
        }
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd b(n, static_cast<Eigen::Index>(g));
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto i = rows[static_cast<std::size_t>(a)];
        for (std::size_t k = 0; k < g; ++k) {
            b(a, static_cast<Eigen::Index>(k)) = py[k] > 0.0 ? p(i, k) / std::sqrt(px[i] * py[k]) : 0.0;
        }
    }
    const Eigen::MatrixXd s = b * b.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
    std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    eig.resize(g, 0.0);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig.size() > 1 ? eig[1] : 0.0;
}

}  // namespace

FeatureVector features(const JointMatrix& p) {
    const auto g = p.levels();
    std::vector<double> px(g, 0.0), py(g, 0.0), psum(2 * g - 1, 0.0), pdiff(g, 0.0);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            const double v = p(i, j);
            px[i] += v;
            py[j] += v;
            psum[i + j] += v;
            pdiff[i > j ? i - j : j - i] += v;
        }
    }
    double mux = 0.0, muy = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        mux += static_cast<double>(i) * px[i];
        muy += static_cast<double>(i) * py[i];
    }
    double varx = 0.0, vary = 0.0, hx = 0.0, hy = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        varx += (static_cast<double>(i) - mux) * (static_cast<double>(i) - mux) * px[i];
        vary += (static_cast<double>(i) - muy) * (static_cast<double>(i) - muy) * py[i];
        hx -= plogp(px[i]);
        hy -= plogp(py[i]);
    }

    double asm_ = 0.0, ij = 0.0, var = 0.0, idm = 0.0, entropy = 0.0, hxy1 = 0.0, hxy2 = 0.0;
    double shade = 0.0, prominence = 0.0, moment = 0.0, inertia = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        const double di = static_cast<double>(i);
        for (std::size_t j = 0; j < g; ++j) {
            const double dj = static_cast<double>(j);
            const double v = p(i, j);
            const double prod = px[i] * py[j];
            asm_ += v * v;
            ij += di * dj * v;
            var += (di - mux) * (di - mux) * v;
            idm += v / (1.0 + (di - dj) * (di - dj));
            entropy -= plogp(v);
            if (v > 0.0 && prod > 0.0) {
                hxy1 -= v * std::log2(prod);
            }
            hxy2 -= plogp(prod);
            const double s = di + dj - mux - muy;
            shade += s * s * s * v;
            prominence += s * s * s * s * v;
            moment += (di - mux) * (dj - muy) * v;
            inertia += (di - dj) * (di - dj) * v;
        }
    }

    double contrast = 0.0, dmean = 0.0, dentropy = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
        const double dk = static_cast<double>(k);
        contrast += dk * dk * pdiff[k];
        dmean += dk * pdiff[k];
        dentropy -= plogp(pdiff[k]);
    }
    double dvar = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
        dvar += (static_cast<double>(k) - dmean) * (static_cast<double>(k) - dmean) * pdiff[k];
    }

    double savg = 0.0, sentropy = 0.0;
    for (std::size_t k = 0; k < psum.size(); ++k) {
        savg += static_cast<double>(k) * psum[k];
        sentropy -= plogp(psum[k]);
    }
    double svar = 0.0;
    for (std::size_t k = 0; k < psum.size(); ++k) {
        svar += (static_cast<double>(k) - savg) * (static_cast<double>(k) - savg) * psum[k];
    }

    FeatureVector out;
    auto& f = out.values;
    const double sigma = std::sqrt(varx) * std::sqrt(vary);
    const double hmax = std::max(hx, hy);
    f[0] = asm_;
    f[1] = contrast;
    if (sigma > 0.0) {
        f[2] = (ij - mux * muy) / sigma;
    } else {
        out.degenerate = true;
    }
    f[3] = var;
    f[4] = idm;
    f[5] = savg;
    f[6] = svar;
    f[7] = sentropy;
    f[8] = entropy;
    f[9] = dvar;
    f[10] = dentropy;
    if (hmax > 0.0) {
        f[11] = (entropy - hxy1) / hmax;
    } else {
        out.degenerate = true;
    }
    f[12] = std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * (hxy2 - entropy))));
    const double lambda2 = second_eigenvalue(p, px, py);
    if (lambda2 > 0.0) {
        f[13] = std::sqrt(lambda2);
    } else {
        out.degenerate = true;
    }
    f[14] = shade;
    f[15] = prominence;
    f[16] = moment;
    f[17] = inertia;
    f[18] = mux;
    return out;
}

// =============================================================================
// Dataset extraction
// =============================================================================

std::vector<tabular::FeatureTable> extract_dataset(const std::vector<ImageSample>& samples, std::size_t levels,
                                                   std::size_t distance) {
    if (samples.empty()) {
        throw InvalidArgument("extract_dataset: no images");
    }
    const auto& names = feature_names();
    const std::vector<std::string> columns(names.begin(), names.end());
    std::vector<tabular::FeatureTable> tables(kDatasetNames.size(), tabular::FeatureTable(columns));
    for (const auto& s : samples) {
        try {
            const auto q = quantize(s.image, s.mask, levels);
            for (std::size_t d = 0; d < kDirections.size(); ++d) {
                const auto fv = features(glcm(q, kDirections[d], distance, true));
                tables[d].add_row(s.id, {fv.values.begin(), fv.values.end()});
            }
            const auto fv = features(gldm_all(q, distance));
            tables.back().add_row(s.id, {fv.values.begin(), fv.values.end()});
        } catch (const EmptyMatrixError& e) {
            throw EmptyMatrixError("image '" + s.id + "': " + e.what());
        }
    }
    return tables;
}

}  // namespace softsel::texture
