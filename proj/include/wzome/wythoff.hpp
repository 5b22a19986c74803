#pragma once

// Wythoff construction: seed point, vertex orbit, edges, graded face lattice.

#include <array>
#include <vector>

#include "wzome/coxeter.hpp"
#include "wzome/polytope.hpp"

namespace wz {

// Seed at equal perpendicular distance from every active mirror, on every
// inactive one. Exact when the needed norm ratios are squares in Q(phi);
// callers check seed_is_exact first (the float variant is always available).
bool seed_is_exact(const ReflectionRep& rep, const RingPattern& rings);
GVec seed_point(const ReflectionRep& rep, const RingPattern& rings);
std::vector<double> seed_point_f(const ReflectionRep& rep, const RingPattern& rings);

// BFS closure of p under all generators; deterministic discovery order.
std::vector<GVec> vertex_orbit(const ReflectionRep& rep, const GVec& p,
                               long cap = 1000000);
std::vector<std::vector<double>> vertex_orbit_f(const ReflectionRep& rep,
                                                const std::vector<double>& p,
                                                long cap = 1000000);

// Full construction: orbit, edge closure, and faces of every rank 1..d-1 via
// parabolic suborbits filtered by exact (or float) affine dimension.
Polytope build_polytope(const ReflectionRep& rep, const RingPattern& rings,
                        long cap = 1000000);

// Neighbor lists over top-rank faces: adjacent iff they share a rank d-2
// face. Requires dim == 4.
std::vector<std::vector<int>> cell_adjacency(const Polytope& poly);

}  // namespace wz
