#pragma once

// A dg presentation together with the two auxiliary gradings used to cut
// complexes into finite slices: a homogeneous path length (every arrow
// weighs at least 1) and the weight (number of letters from an adjoined
// bimodule).

#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "cyforge/quiverdg.hpp"

namespace cyforge {

struct GradedBase {
  DgPresentation pres;
  std::vector<int> arrow_length;
  std::vector<int> arrow_weight;
  bool exact_length = true;   // d is homogeneous for arrow_length
  bool weight_graded = true;  // d preserves arrow_weight

  const GradedQuiver& quiver() const { return pres.quiver; }
  int length(const Path& p) const { return path_weight(arrow_length, p); }
  int weight(const Path& p) const { return path_weight(arrow_weight, p); }
  int degree(const Path& p) const { return cyforge::degree(pres.quiver, p); }
};

using BasePtr = std::shared_ptr<const GradedBase>;

/// Falls back to unit lengths (exact_length = false) when the differential
/// admits no homogeneous length. Missing weights are zero.
BasePtr make_graded_base(DgPresentation p, std::vector<int> arrow_weight = {});
/// Uses the given lengths; exact_length records whether d respects them.
BasePtr make_graded_base(DgPresentation p, std::vector<int> arrow_weight,
                         std::vector<int> arrow_length);

/// All paths of a base up to a length bound, indexed by endpoints and length.
class PathCatalog {
 public:
  PathCatalog(const GradedBase& base, int max_length);

  const std::vector<Path>& paths(VertexId source, VertexId target, int length) const;
  /// All closed paths at any vertex with the given length.
  std::vector<Path> cycles(int length) const;
  int max_length() const { return max_length_; }

 private:
  int max_length_;
  std::size_t vertex_count_;
  std::map<std::tuple<VertexId, VertexId, int>, std::vector<Path>> paths_;
  std::vector<Path> empty_;
};

}  // namespace cyforge
