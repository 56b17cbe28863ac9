#pragma once

#include "phardy/exponent.hpp"
#include "phardy/graph.hpp"

namespace phardy {

// sign(t)|t|^q with the 0/0 = 0 convention at t = 0 for every q.
double signed_power(double t, double q);

// deg(x) = sum_y b(x,y); zero for an isolated vertex.
double degree(const WeightedGraph& g, VertexId x);

// deg(x)/m(x).
double degree_ratio(const WeightedGraph& g, VertexId x);

// |grad f|(x) = ((1/m(x)) sum_y b(x,y)|f(x)-f(y)|^p)^(1/p).
// At non-interior vertices the value only sees edges inside the truncation;
// use g.is_interior(x) to tell them apart.
double grad_norm(const WeightedGraph& g, Exponent p, const GraphFunction& f, VertexId x);

// |grad f|^p(x), without the final root.
double grad_norm_pow(const WeightedGraph& g, Exponent p, const GraphFunction& f, VertexId x);

// Q(f) = (1/p) sum over ordered pairs of b(x,y)|f(x)-f(y)|^p.
double energy(const WeightedGraph& g, Exponent p, const GraphFunction& f);

// Formal p-Laplacian (1/m(x)) sum_y b(x,y)(f(x)-f(y))|f(x)-f(y)|^(p-2).
// Edge terms with f(x) = f(y) contribute zero for every p.
double laplacian(const WeightedGraph& g, Exponent p, const GraphFunction& f, VertexId x);

// Laplacian evaluated at every vertex (truncated sums off the interior).
GraphFunction laplacian_field(const WeightedGraph& g, Exponent p, const GraphFunction& f);

double lp_norm(const WeightedGraph& g, Exponent p, const GraphFunction& f);
double lp_norm_pow(const WeightedGraph& g, Exponent p, const GraphFunction& f);

// ||f||_{H^{1,p}}^p = Q(f) + ||f||_p^p.
double sobolev_norm_p(const WeightedGraph& g, Exponent p, const GraphFunction& f);

}  // namespace phardy
