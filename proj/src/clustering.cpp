#include <softsel/clustering.hpp>

#include <softsel/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace softsel::clustering {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values, bool standardized)
    : rows_(rows), cols_(cols), values_(std::move(values)), standardized_(standardized) {
    if (values_.size() != rows * cols) {
        throw InvalidArgument("DataMatrix: value count does not match shape");
    }
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidArgument("DataMatrix: non-finite value");
    }
}

DataMatrix DataMatrix::from_table(const tabular::FeatureTable& table) {
    std::vector<double> values;
    values.reserve(table.row_count() * table.column_count());
    for (const auto& row : table.rows()) {
        values.insert(values.end(), row.values.begin(), row.values.end());
    }
    return DataMatrix(table.row_count(), table.column_count(), std::move(values));
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::size_t nearest(std::span<const double> x, const std::vector<std::vector<double>>& centres) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centres.size(); ++c) {
        const double d = squared_distance(x, centres[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

}  // namespace

DataMatrix standardize(const DataMatrix& data) {
    if (data.rows() < 2) {
        throw InvalidArgument("standardize: needs at least two rows");
    }
    const auto n = data.rows();
    const auto d = data.cols();
    std::vector<double> out(n * d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean += data(i, j);
        }
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            var += (data(i, j) - mean) * (data(i, j) - mean);
        }
        const double sd = std::sqrt(var / static_cast<double>(n));
        if (sd > 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                out[i * d + j] = (data(i, j) - mean) / sd;
            }
        }
    }
    return DataMatrix(n, d, std::move(out), true);
}

// =============================================================================
// K-Means
// =============================================================================

namespace {

std::vector<std::vector<double>> kmeanspp_init(const DataMatrix& data, std::size_t k, std::mt19937_64& rng) {
    const auto n = data.rows();
    std::vector<std::size_t> chosen;
    std::vector<bool> taken(n, false);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    chosen.push_back(pick(rng));
    taken[chosen.back()] = true;

    std::vector<double> d2(n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (chosen.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto c : chosen) {
                best = std::min(best, squared_distance(data.row(i), data.row(c)));
            }
            d2[i] = taken[i] ? 0.0 : best;
            total += d2[i];
        }
        std::size_t next = n;
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (d2[i] > 0.0 && acc >= target) {
                    next = i;
                    break;
                }
            }
            if (next == n) {
                // rounding left the target past the last positive weight
                for (std::size_t i = n; i-- > 0;) {
                    if (d2[i] > 0.0) {
                        next = i;
                        break;
                    }
                }
            }
        } else {
            // every remaining point coincides with a centre
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i) {
                if (!taken[i]) {
                    free.push_back(i);
                }
            }
            std::uniform_int_distribution<std::size_t> pick_free(0, free.size() - 1);
            next = free[pick_free(rng)];
        }
        chosen.push_back(next);
        taken[next] = true;
    }

    std::vector<std::vector<double>> centres;
    for (const auto c : chosen) {
        centres.emplace_back(data.row(c).begin(), data.row(c).end());
    }
    return centres;
}

std::vector<std::vector<double>> cluster_means(const DataMatrix& data, const std::vector<std::size_t>& labels,
                                               const std::vector<std::vector<double>>& previous,
                                               std::vector<std::size_t>& sizes) {
    const auto k = previous.size();
    std::vector<std::vector<double>> means(k, std::vector<double>(data.cols(), 0.0));
    sizes.assign(k, 0);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        ++sizes[labels[i]];
        for (std::size_t j = 0; j < data.cols(); ++j) {
            means[labels[i]][j] += data(i, j);
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] == 0) {
            means[c] = previous[c];
            continue;
        }
        for (auto& v : means[c]) {
            v /= static_cast<double>(sizes[c]);
        }
    }
    return means;
}

}  // namespace

ClusterAssignment kmeans(const DataMatrix& data, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    const auto n = data.rows();
    if (k < 2 || k > n) {
        throw InvalidArgument("kmeans: k must satisfy 2 <= k <= n (k=" + std::to_string(k) +
                              ", n=" + std::to_string(n) + ")");
    }
    std::mt19937_64 rng(seed);
    ClusterAssignment out;
    out.k = k;
    out.centroids = kmeanspp_init(data, k, rng);
    out.labels.assign(n, 0);

    std::vector<std::size_t> sizes;
    for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iter, 1); ++iter) {
        std::vector<std::size_t> labels(n);
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = nearest(data.row(i), out.centroids);
            objective += squared_distance(data.row(i), out.centroids[labels[i]]);
        }
        const bool converged = iter > 0 && labels == out.labels;
        out.labels = std::move(labels);
        out.objective_history.push_back(objective);
        if (converged) {
            break;
        }

        out.centroids = cluster_means(data, out.labels, out.centroids, sizes);
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] != 0) {
                continue;
            }
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[out.labels[i]] < 2) {
                    continue;
                }
                const double d = squared_distance(data.row(i), out.centroids[out.labels[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far == n) {
                break;
            }
            --sizes[out.labels[far]];
            out.labels[far] = c;
            sizes[c] = 1;
            out.centroids[c].assign(data.row(far).begin(), data.row(far).end());
        }
    }
    out.centroids = cluster_means(data, out.labels, out.centroids, sizes);
    return out;
}

// =============================================================================
// SOM
// =============================================================================

ClusterAssignment som(const DataMatrix& data, const SomParams& params, std::uint64_t seed) {
    const auto units = params.grid_rows * params.grid_cols;
    if (units < 2) {
        throw InvalidArgument("som: grid must hold at least two units");
    }
    if (data.rows() == 0) {
        throw InvalidArgument("som: no data");
    }
    const auto n = data.rows();
    std::mt19937_64 rng(seed);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::vector<double>> weights;
    if (n >= units) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t u = 0; u < units; ++u) {
            weights.emplace_back(data.row(order[u]).begin(), data.row(order[u]).end());
        }
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t u = 0; u < units; ++u) {
            const auto i = pick(rng);
            weights.emplace_back(data.row(i).begin(), data.row(i).end());
        }
    }

    const double radius0 = params.radius > 0.0
                               ? params.radius
                               : static_cast<double>(std::max(params.grid_rows, params.grid_cols)) / 2.0;
    // both schedules fall to e^-3 (about 5%) of their start by the last epoch
    const double tau = static_cast<double>(std::max<std::size_t>(params.epochs, 1)) / 3.0;
    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        const double decay = std::exp(-static_cast<double>(epoch) / tau);
        const double rate = params.learning_rate * decay;
        const double radius = radius0 * decay;
        std::shuffle(order.begin(), order.end(), rng);
        for (const auto i : order) {
            const auto x = data.row(i);
            const auto bmu = nearest(x, weights);
            const double br = static_cast<double>(bmu / params.grid_cols);
            const double bc = static_cast<double>(bmu % params.grid_cols);
            for (std::size_t u = 0; u < units; ++u) {
                const double dr = static_cast<double>(u / params.grid_cols) - br;
                const double dc = static_cast<double>(u % params.grid_cols) - bc;
                const double h = std::exp(-(dr * dr + dc * dc) / (2.0 * radius * radius));
                for (std::size_t j = 0; j < x.size(); ++j) {
                    weights[u][j] += rate * h * (x[j] - weights[u][j]);
                }
            }
        }
    }

    std::vector<std::size_t> bmu(n);
    std::vector<bool> used(units, false);
    for (std::size_t i = 0; i < n; ++i) {
        bmu[i] = nearest(data.row(i), weights);
        used[bmu[i]] = true;
    }
    std::vector<std::size_t> dense(units, 0);
    ClusterAssignment out;
    for (std::size_t u = 0; u < units; ++u) {
        if (used[u]) {
            dense[u] = out.units.size();
            out.units.push_back(u);
            out.centroids.push_back(weights[u]);
        }
    }
    out.k = out.units.size();
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.labels[i] = dense[bmu[i]];
    }
    return out;
}

// =============================================================================
// Validity indices
// =============================================================================

namespace {

std::vector<std::vector<std::size_t>> members_of(const DataMatrix& data, const ClusterAssignment& assignment) {
    if (assignment.labels.size() != data.rows()) {
        throw InvalidArgument("assignment does not match the data");
    }
    std::size_t k = assignment.k;
    for (const auto l : assignment.labels) {
        k = std::max(k, l + 1);
    }
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        members[assignment.labels[i]].push_back(i);
    }
    std::erase_if(members, [](const auto& m) { return m.empty(); });
    if (members.size() < 2) {
        throw UndefinedIndexError("validity index needs at least two non-empty clusters");
    }
    return members;
}

}  // namespace

double dunn_index(const DataMatrix& data, const ClusterAssignment& assignment) {
    const auto members = members_of(data, assignment);
    double diameter = 0.0;
    for (const auto& m : members) {
        for (std::size_t a = 0; a < m.size(); ++a) {
            for (std::size_t b = a + 1; b < m.size(); ++b) {
                diameter = std::max(diameter, euclidean(data.row(m[a]), data.row(m[b])));
            }
        }
    }
    if (diameter == 0.0) {
        throw UndefinedIndexError("Dunn index undefined: every cluster has zero diameter");
    }
    double separation = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < members.size(); ++p) {
        for (std::size_t q = p + 1; q < members.size(); ++q) {
            for (const auto i : members[p]) {
                for (const auto j : members[q]) {
                    separation = std::min(separation, euclidean(data.row(i), data.row(j)));
                }
            }
        }
    }
    return separation / diameter;
}

double silhouette(const DataMatrix& data, const ClusterAssignment& assignment) {
    const auto members = members_of(data, assignment);
    double total = 0.0;
    for (std::size_t c = 0; c < members.size(); ++c) {
        for (const auto i : members[c]) {
            if (members[c].size() == 1) {
                continue;
            }
            double a = 0.0;
            for (const auto j : members[c]) {
                a += euclidean(data.row(i), data.row(j));
            }
            a /= static_cast<double>(members[c].size() - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t o = 0; o < members.size(); ++o) {
                if (o == c) {
                    continue;
                }
                double mean = 0.0;
                for (const auto j : members[o]) {
                    mean += euclidean(data.row(i), data.row(j));
                }
                b = std::min(b, mean / static_cast<double>(members[o].size()));
            }
            const double scale = std::max(a, b);
            if (scale > 0.0) {
                total += (b - a) / scale;
            }
        }
    }
    return total / static_cast<double>(data.rows());
}

std::vector<EvaluationRow> evaluate_subsets(const tabular::FeatureTable& table,
                                            const std::vector<NamedSubset>& subsets,
                                            const EvaluationParams& params) {
    std::vector<EvaluationRow> rows;
    for (const auto& subset : subsets) {
        if (subset.columns.empty()) {
            throw InvalidArgument("evaluate_subsets: subset '" + subset.name + "' is empty");
        }
        const auto data = standardize(DataMatrix::from_table(table.select(subset.columns)));
        const auto score = [&](const std::string& algorithm, const ClusterAssignment& assignment) {
            EvaluationRow row{subset.name, algorithm, subset.columns.size(), std::nullopt, std::nullopt};
            try {
                row.dunn = dunn_index(data, assignment);
            } catch (const UndefinedIndexError&) {
            }
            try {
                row.silhouette = silhouette(data, assignment);
            } catch (const UndefinedIndexError&) {
            }
            rows.push_back(std::move(row));
        };
        score("kmeans", kmeans(data, params.k, params.seed, params.max_iter));
        score("som", som(data, params.som, params.seed));
    }
    return rows;
}

}  // namespace softsel::clustering
