#include "hforge/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "hforge/errors.hpp"

namespace hforge {

namespace {

// ---------------------------------------------------------------- meshing --

struct MeshBuilder {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::map<int, std::vector<int>> rings;  // ring key -> vertex ids (by angle index)
    int n_phi;

    explicit MeshBuilder(int resolution) : n_phi(std::max(12, resolution)) {}

    int add_vertex(const Vec3& p) {
        vertices.push_back(p);
        return static_cast<int>(vertices.size()) - 1;
    }

    // vertices of a shared circle, created on first use from `patch` at row u
    const std::vector<int>& ring(int key, const ParamPatch& patch, double u) {
        auto it = rings.find(key);
        if (it != rings.end()) return it->second;
        std::vector<int> ids(n_phi);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2 * M_PI * j / n_phi;
            ids[j] = add_vertex(patch.jet(u, phi).p);
        }
        return rings.emplace(key, std::move(ids)).first->second;
    }
};

double point_segment_dist2(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    double s = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return (p - (a + s * ab)).squaredNorm();
}

double point_triangle_dist(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    auto side = [](const Vec2& x, const Vec2& y, const Vec2& z) {
        return (y.x() - x.x()) * (z.y() - x.y()) - (y.y() - x.y()) * (z.x() - x.x());
    };
    const double d1 = side(a, b, p), d2 = side(b, c, p), d3 = side(c, a, p);
    const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
    if (!(neg && pos)) return 0.0;  // inside
    return std::sqrt(std::min({point_segment_dist2(p, a, b), point_segment_dist2(p, b, c),
                               point_segment_dist2(p, c, a)}));
}

struct PatchMeshData {
    std::vector<std::array<int, 3>> tris;
    std::vector<Vec2> plane;  // profile-plane coords per mesh vertex (graph kinds)
    std::map<int, Vec2> plane_of;
};

// zip two closed loops (outer polygon and inner circle) that are both
// star-shaped about the hole center and ordered CCW by angle in [0, 2pi)
void zip_loops(std::vector<std::array<int, 3>>& tris, const std::vector<int>& outer,
               const std::vector<double>& outer_ang, const std::vector<int>& inner,
               const std::vector<double>& inner_ang) {
    const size_t no = outer.size(), ni = inner.size();
    auto unwrapped = [](const std::vector<double>& a, size_t k) {
        return a[k % a.size()] + 2 * M_PI * static_cast<double>(k / a.size());
    };
    size_t i = 0, j = 0;
    while (i < no || j < ni) {
        bool advance_outer;
        if (i >= no)
            advance_outer = false;
        else if (j >= ni)
            advance_outer = true;
        else
            advance_outer = unwrapped(outer_ang, i + 1) <= unwrapped(inner_ang, j + 1);
        if (advance_outer) {
            tris.push_back({outer[i % no], outer[(i + 1) % no], inner[j % ni]});
            ++i;
        } else {
            tris.push_back({outer[i % no], inner[(j + 1) % ni], inner[j % ni]});
            ++j;
        }
    }
}

void cut_hole(MeshBuilder& mb, const ParamPatch& patch, PatchMeshData& data, const Disc2& hole,
              int ring_key) {
    // remove triangles near the hole; their boundary becomes the cavity loop
    const double r_rm = 1.35 * hole.radius;
    std::vector<std::array<int, 3>> kept, removed;
    for (const auto& t : data.tris) {
        const Vec2 &a = data.plane_of.at(t[0]), &b = data.plane_of.at(t[1]),
                   &c = data.plane_of.at(t[2]);
        if (point_triangle_dist(hole.center, a, b, c) < r_rm)
            removed.push_back(t);
        else
            kept.push_back(t);
    }
    if (removed.empty()) throw NotWatertight("hole removal found no triangles; grid too coarse");

    std::map<std::pair<int, int>, int> edge_count;
    auto bump = [&edge_count](int a, int b) {
        edge_count[{std::min(a, b), std::max(a, b)}]++;
    };
    for (const auto& t : removed) {
        bump(t[0], t[1]);
        bump(t[1], t[2]);
        bump(t[2], t[0]);
    }
    std::map<std::pair<int, int>, int> kept_edges;
    for (const auto& t : kept) {
        auto mark = [&kept_edges](int a, int b) {
            kept_edges[{std::min(a, b), std::max(a, b)}]++;
        };
        mark(t[0], t[1]);
        mark(t[1], t[2]);
        mark(t[2], t[0]);
    }
    // cavity edges: belong to exactly one removed triangle and one kept one
    std::vector<int> loop_vertices;
    {
        std::map<int, std::vector<int>> adj;
        for (const auto& [e, cnt] : edge_count) {
            if (cnt != 1) continue;
            if (!kept_edges.count(e)) continue;
            adj[e.first].push_back(e.second);
            adj[e.second].push_back(e.first);
        }
        if (adj.empty()) throw NotWatertight("hole cavity has no boundary loop");
        for (const auto& [v, nb] : adj)
            if (nb.size() != 2) throw NotWatertight("hole cavity boundary is not a simple loop");
        const int start = adj.begin()->first;
        int prev = -1, cur = start;
        do {
            loop_vertices.push_back(cur);
            const auto& nb = adj.at(cur);
            const int nxt = (nb[0] == prev) ? nb[1] : nb[0];
            prev = cur;
            cur = nxt;
        } while (cur != start && loop_vertices.size() <= adj.size());
        if (cur != start) throw NotWatertight("hole cavity boundary did not close");
    }

    // order CCW by angle about the hole center
    auto angle_of = [&](int v) {
        const Vec2 q = data.plane_of.at(v) - hole.center;
        double a = std::atan2(q.y(), q.x());
        return a < 0 ? a + 2 * M_PI : a;
    };
    std::sort(loop_vertices.begin(), loop_vertices.end(),
              [&](int a, int b) { return angle_of(a) < angle_of(b); });
    std::vector<double> loop_angles;
    for (int v : loop_vertices) loop_angles.push_back(angle_of(v));

    // ring vertices on the hole circle; index j sits at angle 2 pi j / n
    // around the hole center, matching the neck patch's angular sampling
    std::vector<int> ring_ids;
    {
        auto it = mb.rings.find(ring_key);
        if (it != mb.rings.end()) {
            ring_ids = it->second;
        } else {
            ring_ids.resize(mb.n_phi);
            for (int j = 0; j < mb.n_phi; ++j) {
                const double psi = 2 * M_PI * j / mb.n_phi;
                const Vec2 q = hole.center + hole.radius * Vec2(std::cos(psi), std::sin(psi));
                double phi = std::atan2(q.y(), q.x());
                if (phi < 0) phi += 2 * M_PI;
                ring_ids[j] = mb.add_vertex(patch.jet(q.norm(), phi).p);
            }
            mb.rings.emplace(ring_key, ring_ids);
        }
        for (int j = 0; j < mb.n_phi; ++j) {
            const double psi = 2 * M_PI * j / mb.n_phi;
            data.plane_of[ring_ids[j]] =
                hole.center + hole.radius * Vec2(std::cos(psi), std::sin(psi));
        }
    }
    std::vector<double> ring_angles(ring_ids.size());
    for (size_t j = 0; j < ring_ids.size(); ++j) ring_angles[j] = 2 * M_PI * j / mb.n_phi;

    zip_loops(kept, loop_vertices, loop_angles, ring_ids, ring_angles);
    data.tris = std::move(kept);
}

void mesh_profile_patch(MeshBuilder& mb, const ParamPatch& patch) {
    const ProfileChart* pc = patch.profile();
    const Rect& d = patch.domain;
    const double span = d.u1 - d.u0;

    int nt;
    switch (patch.kind) {
        case PatchKind::sphere_cap:
            nt = std::max(8, static_cast<int>(std::ceil(mb.n_phi * span / (2 * M_PI))));
            break;
        case PatchKind::revolution:
            nt = std::max(16, static_cast<int>(std::ceil(6 * span)));
            break;
        default:
            nt = std::max(6, mb.n_phi / 6);
            break;
    }

    const double scale = std::fabs(pc->scale());
    const double tiny = 1e-12 * std::max(scale, 1e-30);
    const bool pole0 = std::fabs(pc->f(d.u0).value) * scale < tiny;
    const bool pole1 = std::fabs(pc->f(d.u1).value) * scale < tiny;

    // rows of vertex ids; poles collapse to a single vertex
    std::vector<std::vector<int>> rows(nt + 1);
    PatchMeshData data;
    const bool track_plane = !patch.holes.empty();
    auto plane_coord = [&](double t, double phi) {
        return Vec2(t * std::cos(phi), t * std::sin(phi));
    };
    for (int i = 0; i <= nt; ++i) {
        const double t = d.u0 + span * i / nt;
        const bool pole = (i == 0 && pole0) || (i == nt && pole1);
        const int key = (i == 0) ? patch.ring_key_u0 : (i == nt ? patch.ring_key_u1 : -1);
        if (pole) {
            rows[i].push_back(mb.add_vertex(patch.jet(t, 0).p));
        } else if (key >= 0) {
            rows[i] = mb.ring(key, patch, t);
        } else {
            rows[i].resize(mb.n_phi);
            for (int j = 0; j < mb.n_phi; ++j)
                rows[i][j] = mb.add_vertex(patch.jet(t, 2 * M_PI * j / mb.n_phi).p);
        }
        if (track_plane) {
            for (int j = 0; j < static_cast<int>(rows[i].size()); ++j)
                data.plane_of[rows[i][j]] =
                    plane_coord(t, rows[i].size() == 1 ? 0 : 2 * M_PI * j / mb.n_phi);
        }
    }

    for (int i = 0; i < nt; ++i) {
        const auto& lo = rows[i];
        const auto& hi = rows[i + 1];
        if (lo.size() == 1 && hi.size() == 1) continue;
        if (lo.size() == 1) {
            for (int j = 0; j < mb.n_phi; ++j)
                data.tris.push_back({lo[0], hi[(j + 1) % mb.n_phi], hi[j]});
        } else if (hi.size() == 1) {
            for (int j = 0; j < mb.n_phi; ++j)
                data.tris.push_back({lo[j], lo[(j + 1) % mb.n_phi], hi[0]});
        } else {
            for (int j = 0; j < mb.n_phi; ++j) {
                const int jn = (j + 1) % mb.n_phi;
                data.tris.push_back({lo[j], lo[jn], hi[jn]});
                data.tris.push_back({lo[j], hi[jn], hi[j]});
            }
        }
    }

    for (size_t hidx = 0; hidx < patch.holes.size(); ++hidx) {
        const int key = hidx < patch.hole_ring_keys.size() ? patch.hole_ring_keys[hidx]
                                                           : -(1000 + static_cast<int>(hidx));
        cut_hole(mb, patch, data, patch.holes[hidx], key);
    }

    if (patch.orientation < 0)
        for (auto& t : data.tris) std::swap(t[1], t[2]);
    mb.triangles.insert(mb.triangles.end(), data.tris.begin(), data.tris.end());
}

void mesh_generic_patch(MeshBuilder& mb, const ParamPatch& patch) {
    const Rect& d = patch.domain;
    const int nu = std::max(8, mb.n_phi / 3), nv = mb.n_phi;
    std::vector<std::vector<int>> rows(nu + 1, std::vector<int>(nv + 1));
    for (int i = 0; i <= nu; ++i)
        for (int j = 0; j <= nv; ++j) {
            const double u = d.u0 + (d.u1 - d.u0) * i / nu;
            const double v = d.v0 + (d.v1 - d.v0) * j / nv;
            rows[i][j] = mb.add_vertex(patch.jet(u, v).p);
        }
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            mb.triangles.push_back({rows[i][j], rows[i + 1][j], rows[i + 1][j + 1]});
            mb.triangles.push_back({rows[i][j], rows[i + 1][j + 1], rows[i][j + 1]});
        }
}

// drop vertices no triangle references (left behind by hole removal)
void compact(TriMesh& mesh) {
    std::vector<int> remap(mesh.vertices.size(), -1);
    std::vector<Vec3> out;
    for (auto& t : mesh.triangles)
        for (int& v : t) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(out.size());
                out.push_back(mesh.vertices[v]);
            }
            v = remap[v];
        }
    mesh.vertices = std::move(out);
}

void weld(TriMesh& mesh) {
    if (mesh.weld_tolerance <= 0) return;
    const double q = mesh.weld_tolerance;
    std::map<std::array<long long, 3>, int> seen;
    std::vector<int> remap(mesh.vertices.size());
    std::vector<Vec3> out;
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& p = mesh.vertices[i];
        const std::array<long long, 3> cell = {llround(p.x() / q), llround(p.y() / q),
                                               llround(p.z() / q)};
        auto it = seen.find(cell);
        if (it == seen.end()) {
            seen.emplace(cell, static_cast<int>(out.size()));
            remap[i] = static_cast<int>(out.size());
            out.push_back(p);
        } else {
            remap[i] = it->second;
        }
    }
    mesh.vertices = std::move(out);
    std::vector<std::array<int, 3>> tris;
    for (auto& t : mesh.triangles) {
        const std::array<int, 3> m = {remap[t[0]], remap[t[1]], remap[t[2]]};
        if (m[0] == m[1] || m[1] == m[2] || m[2] == m[0]) continue;
        tris.push_back(m);
    }
    mesh.triangles = std::move(tris);
}

// make triangle windings globally consistent, then orient outward
void orient(TriMesh& mesh, bool closed) {
    const size_t n = mesh.triangles.size();
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (size_t i = 0; i < n; ++i) {
        const auto& t = mesh.triangles[i];
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            edge_tris[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(i));
        }
    }
    std::vector<int> state(n, 0);  // 0 unvisited, 1 keep, 2 flip
    auto directed_has = [&](int ti, int a, int b) {
        const auto& t = mesh.triangles[ti];
        for (int e = 0; e < 3; ++e)
            if (t[e] == a && t[(e + 1) % 3] == b) return true;
        return false;
    };
    for (size_t seed = 0; seed < n; ++seed) {
        if (state[seed]) continue;
        state[seed] = 1;
        std::vector<int> stack = {static_cast<int>(seed)};
        while (!stack.empty()) {
            const int ti = stack.back();
            stack.pop_back();
            const auto t = mesh.triangles[ti];
            std::array<std::pair<int, int>, 3> edges = {
                std::make_pair(t[0], t[1]), {t[1], t[2]}, {t[2], t[0]}};
            if (state[ti] == 2)
                for (auto& e : edges) std::swap(e.first, e.second);
            for (const auto& e : edges) {
                const auto key = std::make_pair(std::min(e.first, e.second),
                                                std::max(e.first, e.second));
                for (int other : edge_tris[key]) {
                    if (other == ti || state[other]) continue;
                    // consistent orientation: the neighbor must use this edge reversed
                    const bool other_same = directed_has(other, e.first, e.second);
                    state[other] = other_same ? 2 : 1;
                    stack.push_back(other);
                }
            }
        }
    }
    for (size_t i = 0; i < n; ++i)
        if (state[i] == 2) std::swap(mesh.triangles[i][1], mesh.triangles[i][2]);

    if (!closed) return;
    double vol = 0;
    for (const auto& t : mesh.triangles)
        vol += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]])) / 6.0;
    if (vol < 0)
        for (auto& t : mesh.triangles) std::swap(t[1], t[2]);
}

std::map<std::pair<int, int>, int> edge_counts(const TriMesh& mesh) {
    std::map<std::pair<int, int>, int> counts;
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            counts[{std::min(a, b), std::max(a, b)}]++;
        }
    return counts;
}

IntegrandSpec area_integrand() {
    IntegrandSpec s;
    s.ncomp = 1;
    s.needs_curvature = false;
    s.eval = [](const QuadPoint&, double* out) { out[0] = 1.0; };
    return s;
}

IntegrandSpec area_h2_integrand() {
    IntegrandSpec s;
    s.ncomp = 2;
    s.needs_curvature = true;
    s.eval = [](const QuadPoint& q, double* out) {
        out[0] = 1.0;
        out[1] = q.H * q.H;
    };
    return s;
}

}  // namespace

TriMesh triangulate(const SurfaceAssembly& assembly, int resolution) {
    MeshBuilder mb(resolution);
    for (const ParamPatch& patch : assembly.patches) {
        if (patch.profile())
            mesh_profile_patch(mb, patch);
        else
            mesh_generic_patch(mb, patch);
    }
    TriMesh mesh;
    mesh.vertices = std::move(mb.vertices);
    mesh.triangles = std::move(mb.triangles);
    mesh.weld_tolerance = 1e-7 * std::max(assembly.diameter(), 1e-12);
    weld(mesh);
    compact(mesh);
    if (assembly.meta.closed && !is_watertight(mesh))
        throw NotWatertight("closed assembly did not weld watertight");
    orient(mesh, assembly.meta.closed);
    return mesh;
}

bool is_watertight(const TriMesh& mesh) {
    for (const auto& [e, c] : edge_counts(mesh))
        if (c != 2) return false;
    return !mesh.triangles.empty();
}

bool is_connected(const TriMesh& mesh) {
    const size_t n = mesh.vertices.size();
    if (n == 0) return false;
    std::vector<std::vector<int>> adj(n);
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            adj[t[e]].push_back(t[(e + 1) % 3]);
            adj[t[(e + 1) % 3]].push_back(t[e]);
        }
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

int euler_genus(const TriMesh& mesh) {
    if (!is_watertight(mesh)) throw NotWatertight("euler_genus requires a watertight mesh");
    const long V = static_cast<long>(mesh.vertices.size());
    const long E = static_cast<long>(edge_counts(mesh).size());
    const long F = static_cast<long>(mesh.triangles.size());
    const long chi = V - E + F;
    if ((2 - chi) % 2 != 0) throw NotWatertight("odd Euler characteristic defect");
    return static_cast<int>((2 - chi) / 2);
}

void save_obj(const TriMesh& mesh, std::ostream& os) {
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        os << buf;
    }
    for (const auto& t : mesh.triangles) {
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
        os << buf;
    }
}

BallCheck mueller_roeger_check(const SurfaceAssembly& assembly, double tol) {
    if (!assembly.meta.in_unit_ball)
        throw NotInBall("mueller_roeger_check requires support in the closed unit ball");
    QuadOptions opt;
    opt.tol = tol;
    const QuadResult r = integrate_assembly(assembly, area_h2_integrand(), opt);
    BallCheck out;
    out.area = r.values[0];
    out.willmore = 0.25 * r.values[1];
    out.margin = out.willmore - out.area;
    out.err = r.errors[0] + 0.25 * r.errors[1];
    out.pass = out.margin >= -out.err;
    return out;
}

LiYauReport li_yau_density_check(const SurfaceAssembly& assembly, const Vec3& center,
                                 const std::vector<double>& radii, double tol) {
    QuadOptions opt;
    opt.tol = tol;
    LiYauReport rep;
    // density estimated from the smallest ball whose mass is resolved well
    // above its own error estimate: the limsup itself is out of numerical
    // reach, so this is the documented approximation (test only the
    // inequality direction)
    const double diam = std::max(assembly.diameter(), 1e-9);
    for (double s : {0.01, 0.02, 0.04, 0.08, 0.16}) {
        const double probe = s * diam;
        QuadOptions probe_opt = opt;
        probe_opt.tol = std::min(opt.tol, 2e-3 * M_PI * probe * probe);
        QuadResult r = integrate_assembly(assembly, area_integrand(), probe_opt,
                                          BallWindow{center, probe});
        if (r.values[0] > 0 && r.values[0] > 20 * r.errors[0]) {
            rep.theta_sq = r.values[0] / (M_PI * probe * probe);
            rep.probe_radius = probe;
            break;
        }
    }
    rep.pass = rep.theta_sq > 0;
    for (double r : radii) {
        QuadResult q = integrate_assembly(assembly, area_h2_integrand(), opt,
                                          BallWindow{center, r});
        LiYauRow row;
        row.r = r;
        row.mass = q.values[0];
        row.curvature_term = q.values[1] / (4 * M_PI);
        const double rhs = row.mass / (M_PI * r * r) + row.curvature_term;
        const double slack = (q.errors[0] / (M_PI * r * r) + q.errors[1] / (4 * M_PI)) + 1e-9;
        row.ok = rep.theta_sq <= rhs + slack + 0.05 * rep.theta_sq;
        rep.pass = rep.pass && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

SphereCriterion sphere_criterion_check(const SurfaceAssembly& assembly,
                                       const HelfrichParams& params, double tol) {
    if (!(params.chi_K < 0) || params.H0 != 0)
        throw ContradictionDetected("sphere criterion needs chi_K < 0 and H0 = 0");
    if (!assembly.meta.in_unit_ball)
        throw NotInBall("sphere criterion stated for surfaces in the unit ball");
    QuadOptions opt;
    opt.tol = tol;
    const EnergyReport rep = evaluate_energy(assembly, opt, params);
    SphereCriterion out;
    out.energy = rep.helfrich;
    out.threshold = 4 * params.chi_H * rep.area;
    out.is_sphere_certified = out.energy <= out.threshold;
    if (out.is_sphere_certified) {
        const int g = genus_from_gauss(assembly, opt);
        if (g != 0)
            throw ContradictionDetected("energy below sphere threshold but genus nonzero");
    }
    return out;
}

MassProfile mass_profile(const SurfaceAssembly& assembly, const Vec3& center,
                         const std::vector<double>& radii, double tol) {
    QuadOptions opt;
    opt.tol = tol;
    MassProfile profile;
    for (double r : radii) {
        QuadResult q =
            integrate_assembly(assembly, area_integrand(), opt, BallWindow{center, r});
        profile.radii.push_back(r);
        profile.masses.push_back(q.values[0]);
    }
    return profile;
}

const std::vector<double>& reference_profile_radii() {
    static const std::vector<double> radii = {0.2,  0.3,  0.4,  0.5,   0.6,  0.7,  0.8,
                                              0.9,  0.93, 0.95, 0.96,  0.97, 0.98, 0.99,
                                              1.005, 1.01, 1.02, 1.05, 1.1,  1.25};
    return radii;
}

double convergence_distance(const SurfaceAssembly& assembly, int m, double tol) {
    const std::vector<double>& radii = reference_profile_radii();
    const MassProfile profile = mass_profile(assembly, Vec3::Zero(), radii, tol);
    double sup = 0;
    for (size_t i = 0; i < radii.size(); ++i) {
        const double sigma = radii[i] >= 1.0 ? 4 * M_PI : 0.0;
        sup = std::max(sup, std::fabs(profile.masses[i] - m * sigma));
    }
    return sup;
}

}  // namespace hforge
