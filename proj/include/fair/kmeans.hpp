#ifndef FAIR_KMEANS_HPP
#define FAIR_KMEANS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fair/error.hpp"

namespace fair::kmeans {

struct GeoPoint
{
    std::string label; ///< university name
    double lat = 0;
    double lon = 0;
};

using Centroid = std::array<double, 2>; // (lat, lon)

struct KMeansModel
{
    std::size_t k = 0;
    std::vector<Centroid> centroids;
    std::vector<std::size_t> assignments; ///< per input point, in input order
    double cost = 0;                      ///< within-cluster sum of squared distances
    std::size_t iterations = 0;
    std::vector<double> cost_history;     ///< cost after each Lloyd iteration

    friend bool operator==(const KMeansModel&, const KMeansModel&) = default;
};

struct FitOptions
{
    std::size_t k = 3;
    std::uint64_t seed = 42;
    std::size_t max_iters = 100;
    double tol = 1e-6; ///< degrees of centroid displacement
};

inline double squared_distance(double lat, double lon, const Centroid& c)
{
    const double dlat = lat - c[0];
    const double dlon = lon - c[1];
    return dlat * dlat + dlon * dlon;
}

/// Nearest centroid by squared Euclidean distance on raw degrees; ties go to the lowest index.
inline std::size_t assign(const GeoPoint& p, const std::vector<Centroid>& centroids)
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(p.lat, p.lon, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

inline double cost(const std::vector<GeoPoint>& points, const KMeansModel& model)
{
    double total = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        total += squared_distance(points[i].lat, points[i].lon, model.centroids[model.assignments[i]]);
    return total;
}

/// Order in which fit() visits points: sorted by (lat, lon, label), input index as
/// the final tie-break. Working in this order makes the result independent of input order.
inline std::vector<std::size_t> canonical_order(const std::vector<GeoPoint>& points)
{
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const GeoPoint& x = points[a];
        const GeoPoint& y = points[b];
        if (x.lat != y.lat) return x.lat < y.lat;
        if (x.lon != y.lon) return x.lon < y.lon;
        return x.label < y.label;
    });
    return order;
}

/// Forgy initialization: k distinct canonical positions drawn without
/// replacement by a partial Fisher-Yates shuffle over mt19937_64(seed).
inline std::vector<std::size_t> forgy_draw(std::size_t n, std::size_t k, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

/// Lloyd's k-means. Each iteration assigns every point to its nearest
/// centroid, then moves centroids to the mean of their points; it stops once
/// no centroid moves by `tol` or more, or after `max_iters` iterations. An
/// empty cluster is reseeded to the point farthest from its assigned centroid.
inline KMeansModel fit(const std::vector<GeoPoint>& input, const FitOptions& options)
{
    const std::size_t k = options.k;
    if (k == 0)
        throw Error(ErrorCode::invalid_k, "k must be positive");
    if (input.size() < k)
        throw Error(ErrorCode::too_few_points,
                    std::to_string(input.size()) + " point(s) cannot form " + std::to_string(k) + " clusters");
    if (options.max_iters == 0 || !(options.tol >= 0))
        throw Error(ErrorCode::invalid_argument, "max_iters must be positive and tol non-negative");
    for (const GeoPoint& p : input)
        if (!(p.lat >= -90 && p.lat <= 90 && p.lon >= -180 && p.lon <= 180))
            throw Error(ErrorCode::invalid_argument, "point '" + p.label + "' has out-of-range coordinates");

    const std::vector<std::size_t> order = canonical_order(input);
    std::vector<GeoPoint> pts;
    pts.reserve(order.size());
    for (std::size_t i : order)
        pts.push_back(input[i]);
    const std::size_t n = pts.size();

    std::vector<Centroid> centroids;
    for (std::size_t i : forgy_draw(n, k, options.seed))
        centroids.push_back({pts[i].lat, pts[i].lon});

    KMeansModel model;
    model.k = k;
    std::vector<std::size_t> assignment(n, 0);

    for (std::size_t iter = 1; iter <= options.max_iters; ++iter) {
        for (std::size_t i = 0; i < n; ++i)
            assignment[i] = assign(pts[i], centroids);

        std::vector<Centroid> sums(k, Centroid{0, 0});
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[assignment[i]][0] += pts[i].lat;
            sums[assignment[i]][1] += pts[i].lon;
            ++counts[assignment[i]];
        }

        std::vector<Centroid> next(k);
        std::vector<bool> reseeded(n, false);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                next[c] = {sums[c][0] / static_cast<double>(counts[c]), sums[c][1] / static_cast<double>(counts[c])};
                continue;
            }
            std::size_t far = 0;
            double far_d = -1;
            for (std::size_t i = 0; i < n; ++i) {
                if (reseeded[i])
                    continue;
                const double d = squared_distance(pts[i].lat, pts[i].lon, centroids[assignment[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            reseeded[far] = true;
            next[c] = {pts[far].lat, pts[far].lon};
        }

        double shift = 0;
        for (std::size_t c = 0; c < k; ++c)
            shift = std::max(shift, std::sqrt(squared_distance(next[c][0], next[c][1], centroids[c])));
        centroids = std::move(next);
        model.iterations = iter;

        double iteration_cost = 0;
        for (std::size_t i = 0; i < n; ++i)
            iteration_cost += squared_distance(pts[i].lat, pts[i].lon, centroids[assignment[i]]);
        model.cost_history.push_back(iteration_cost);

        if (shift < options.tol)
            break;
    }

    model.centroids = std::move(centroids);
    model.assignments.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        model.assignments[order[i]] = assignment[i];
    model.cost = model.cost_history.back();
    return model;
}

inline KMeansModel fit(const std::vector<GeoPoint>& points, std::size_t k, std::uint64_t seed,
                       std::size_t max_iters = 100, double tol = 1e-6)
{
    return fit(points, FitOptions{k, seed, max_iters, tol});
}

/// `{k, centroids:[[lat,lon]], clusters:[{index, members:[label,...]}], cost, iterations}`
inline nlohmann::json to_json(const KMeansModel& model, const std::vector<GeoPoint>& points)
{
    nlohmann::json centroids = nlohmann::json::array();
    for (const Centroid& c : model.centroids)
        centroids.push_back({c[0], c[1]});
    nlohmann::json clusters = nlohmann::json::array();
    for (std::size_t c = 0; c < model.k; ++c) {
        std::vector<std::string> members;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (model.assignments[i] == c)
                members.push_back(points[i].label);
        clusters.push_back({{"index", c}, {"members", members}});
    }
    return {{"k", model.k},
            {"centroids", std::move(centroids)},
            {"clusters", std::move(clusters)},
            {"cost", model.cost},
            {"iterations", model.iterations}};
}

} // namespace fair::kmeans

#endif // FAIR_KMEANS_HPP
