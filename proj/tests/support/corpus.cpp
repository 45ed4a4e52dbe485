#include "corpus.hpp"

#include <random>

#include "deltahull/pipeline.hpp"

namespace corpus {

using deltahull::Matrix;
using deltahull::Rational;
using deltahull::Vector;

InstanceDocument from_rows(const std::vector<std::vector<long>>& A, const std::vector<long>& b) {
  InstanceDocument doc;
  doc.A = Matrix(0, A.front().size());
  for (const auto& row : A) {
    Vector r;
    for (long v : row) r.push_back(v);
    doc.A.append_row(r);
  }
  for (long v : b) doc.b.push_back(v);
  return doc;
}

InstanceDocument unit_square() { return box(2, 0, 1); }

InstanceDocument box(Index n, long lo, long hi) {
  std::vector<std::vector<long>> A;
  std::vector<long> b;
  for (Index j = 0; j < n; ++j) {
    std::vector<long> up(n, 0), down(n, 0);
    up[j] = 1;
    down[j] = -1;
    A.push_back(up);
    b.push_back(hi);
    A.push_back(down);
    b.push_back(-lo);
  }
  return from_rows(A, b);
}

InstanceDocument cross_polytope(Index n) {
  std::vector<std::vector<long>> A;
  std::vector<long> b;
  for (Index mask = 0; mask < (Index{1} << n); ++mask) {
    std::vector<long> row(n);
    for (Index j = 0; j < n; ++j) row[j] = (mask >> j) & 1 ? -1 : 1;
    A.push_back(row);
    b.push_back(1);
  }
  return from_rows(A, b);
}

InstanceDocument square_pyramid(long w, long h) {
  // h x + w z <= h w, etc.; apex (0, 0, h) is tight on all four sides.
  return from_rows({{0, 0, -1}, {h, 0, w}, {-h, 0, w}, {0, h, w}, {0, -h, w}},
                   {0, h * w, h * w, h * w, h * w});
}

InstanceDocument standard_simplex(Index n, long t) {
  std::vector<std::vector<long>> A;
  std::vector<long> b;
  for (Index j = 0; j < n; ++j) {
    std::vector<long> row(n, 0);
    row[j] = -1;
    A.push_back(row);
    b.push_back(0);
  }
  A.push_back(std::vector<long>(n, 1));
  b.push_back(t);
  return from_rows(A, b);
}

InstanceDocument quadrant() { return from_rows({{-1, 0}, {0, -1}}, {0, 0}); }

std::vector<Entry> fuzz_instances() {
  std::mt19937_64 rng(kFuzzSeed);
  std::vector<Entry> out;
  for (Index i = 0; i < kFuzzCount; ++i)
    out.push_back(Entry{"fuzz-" + std::to_string(i), deltahull::random_instance(rng), false, true});
  return out;
}

std::vector<Entry> generated_instances() {
  std::vector<Entry> out;
  const std::pair<Index, Index> limits[] = {{2, 4}, {3, 3}, {4, 2}};
  for (auto [n, kmax] : limits)
    for (Index k = 0; k <= kmax; ++k)
      out.push_back(Entry{"subdivision-n" + std::to_string(n) + "-k" + std::to_string(k),
                          deltahull::generate_subdivision(n, k).instance, true, false});
  return out;
}

std::vector<Entry> constructed_instances() {
  std::vector<Entry> out;
  out.push_back({"unit-square", unit_square()});
  out.push_back({"square-0-3", box(2, 0, 3)});
  out.push_back({"cube-3", box(3, 0, 1)});
  out.push_back({"cube-4", box(4, 0, 1)});
  out.push_back({"centered-cube-3", box(3, -1, 1)});
  out.push_back({"diamond", cross_polytope(2)});
  out.push_back({"octahedron", cross_polytope(3)});
  out.push_back({"pyramid-1-1", square_pyramid(1, 1)});
  out.push_back({"pyramid-1-2", square_pyramid(1, 2)});
  out.push_back({"pyramid-2-3", square_pyramid(2, 3)});
  out.push_back({"simplex-2-3", standard_simplex(2, 3)});
  out.push_back({"simplex-3-2", standard_simplex(3, 2)});
  out.push_back({"quadrant", quadrant()});
  return out;
}

std::vector<Entry> full_corpus() {
  std::vector<Entry> out = constructed_instances();
  for (auto& e : generated_instances()) out.push_back(std::move(e));
  for (auto& e : fuzz_instances()) out.push_back(std::move(e));
  return out;
}

}  // namespace corpus
