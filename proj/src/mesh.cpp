#include "gkf/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace gkf {

namespace {

struct EdgeKey {
    std::uint64_t key;
    EdgeKey(int a, int b)
    {
        if (a > b)
            std::swap(a, b);
        key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    }
    bool operator==(const EdgeKey& o) const { return key == o.key; }
};

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& e) const { return std::hash<std::uint64_t>()(e.key); }
};

} // namespace

SphereGrid SphereGrid::icosphere(int level)
{
    if (level < 0 || level > 8)
        throw std::invalid_argument("icosphere: subdivision level out of range [0, 8]");

    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : verts)
        v.normalize();

    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int s = 0; s < level; ++s) {
        std::unordered_map<EdgeKey, int, EdgeKeyHash> midpoint;
        midpoint.reserve(faces.size() * 2);
        auto mid = [&](int a, int b) {
            const EdgeKey key(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end())
                return it->second;
            Eigen::Vector3d m = (verts[a] + verts[b]).normalized();
            verts.push_back(m);
            const int idx = static_cast<int>(verts.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = mid(f[0], f[1]);
            const int bc = mid(f[1], f[2]);
            const int ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces.swap(next);
    }

    SphereGrid grid;
    grid.subdivision_level = level;
    grid.vertices.resize(static_cast<long>(verts.size()), 3);
    for (std::size_t i = 0; i < verts.size(); ++i)
        grid.vertices.row(static_cast<long>(i)) = verts[i].transpose();
    grid.triangles.resize(static_cast<long>(faces.size()), 3);
    for (std::size_t i = 0; i < faces.size(); ++i)
        grid.triangles.row(static_cast<long>(i)) << faces[i][0], faces[i][1], faces[i][2];

    std::vector<std::pair<int, int>> edge_list;
    {
        std::unordered_map<EdgeKey, char, EdgeKeyHash> seen;
        seen.reserve(faces.size() * 2);
        for (const auto& f : faces)
            for (int e = 0; e < 3; ++e) {
                int a = f[e], b = f[(e + 1) % 3];
                if (a > b)
                    std::swap(a, b);
                if (seen.emplace(EdgeKey(a, b), 1).second)
                    edge_list.emplace_back(a, b);
            }
    }
    std::sort(edge_list.begin(), edge_list.end());
    grid.edges.resize(static_cast<long>(edge_list.size()), 2);
    for (std::size_t i = 0; i < edge_list.size(); ++i)
        grid.edges.row(static_cast<long>(i)) << edge_list[i].first, edge_list[i].second;

    return grid;
}

std::vector<std::vector<int>> SphereGrid::vertex_neighbors() const
{
    std::vector<std::vector<int>> nbr(vertex_count());
    for (long e = 0; e < edges.rows(); ++e) {
        nbr[edges(e, 0)].push_back(edges(e, 1));
        nbr[edges(e, 1)].push_back(edges(e, 0));
    }
    for (auto& list : nbr)
        std::sort(list.begin(), list.end());
    return nbr;
}

double SphereGrid::vertices_per_great_circle() const
{
    double total = 0.0;
    for (long e = 0; e < edges.rows(); ++e)
        total += (vertices.row(edges(e, 0)) - vertices.row(edges(e, 1))).norm();
    const double mean_edge = total / static_cast<double>(edges.rows());
    return 2.0 * M_PI / mean_edge;
}

Eigen::VectorXd cotan_laplacian_apply(const SphereGrid& grid, const Eigen::VectorXd& f)
{
    const long nv = grid.vertex_count();
    if (f.size() != nv)
        throw std::invalid_argument("cotan_laplacian_apply: size mismatch");

    Eigen::VectorXd out = Eigen::VectorXd::Zero(nv);
    Eigen::VectorXd area = Eigen::VectorXd::Zero(nv);

    for (long t = 0; t < grid.triangles.rows(); ++t) {
        const int i = grid.triangles(t, 0);
        const int j = grid.triangles(t, 1);
        const int k = grid.triangles(t, 2);
        const Eigen::Vector3d pi = grid.vertices.row(i);
        const Eigen::Vector3d pj = grid.vertices.row(j);
        const Eigen::Vector3d pk = grid.vertices.row(k);

        const double tri_area = 0.5 * ((pj - pi).cross(pk - pi)).norm();
        const double third = tri_area / 3.0;
        area[i] += third;
        area[j] += third;
        area[k] += third;

        auto cot_at = [](const Eigen::Vector3d& apex, const Eigen::Vector3d& a,
                         const Eigen::Vector3d& b) {
            const Eigen::Vector3d u = a - apex, v = b - apex;
            return u.dot(v) / u.cross(v).norm();
        };
        // Half-cotangent of the angle opposite each edge.
        const double wij = 0.5 * cot_at(pk, pi, pj);
        const double wjk = 0.5 * cot_at(pi, pj, pk);
        const double wki = 0.5 * cot_at(pj, pk, pi);

        out[i] += wij * (f[j] - f[i]) + wki * (f[k] - f[i]);
        out[j] += wij * (f[i] - f[j]) + wjk * (f[k] - f[j]);
        out[k] += wjk * (f[j] - f[k]) + wki * (f[i] - f[k]);
    }
    return out.cwiseQuotient(area);
}

CircleGrid CircleGrid::uniform(int n, double circumference)
{
    if (n < 3)
        throw std::invalid_argument("CircleGrid: need at least 3 vertices");
    if (!(circumference > 0.0))
        throw std::invalid_argument("CircleGrid: circumference must be positive");
    return {n, circumference};
}

} // namespace gkf
