#include "cyforge/graded_base.hpp"

#include <algorithm>
#include <functional>

#include "cyforge/errors.hpp"

namespace cyforge {

namespace {

bool respects(const DgPresentation& p, const std::vector<int>& w) {
  for (std::size_t a = 0; a < w.size(); ++a)
    for (const auto& [path, c] : p.diff[a].terms())
      if (path_weight(w, path) != w[a]) return false;
  return true;
}

}  // namespace

BasePtr make_graded_base(DgPresentation p, std::vector<int> arrow_weight) {
  std::vector<int> len;
  bool exact = true;
  p.diff.resize(p.quiver.arrow_count());
  if (auto l = homogeneous_length(p)) {
    len = *l;
  } else {
    len.assign(p.quiver.arrow_count(), 1);
    exact = false;
  }
  auto b = make_graded_base(std::move(p), std::move(arrow_weight), std::move(len));
  if (!exact) std::const_pointer_cast<GradedBase>(b)->exact_length = false;
  return b;
}

BasePtr make_graded_base(DgPresentation p, std::vector<int> arrow_weight,
                         std::vector<int> arrow_length) {
  auto b = std::make_shared<GradedBase>();
  const std::size_t n = p.quiver.arrow_count();
  p.diff.resize(n);
  arrow_weight.resize(n, 0);
  arrow_length.resize(n, 1);
  for (int l : arrow_length)
    if (l < 1) throw Error("arrow lengths must be positive");
  b->exact_length = respects(p, arrow_length);
  b->arrow_length = std::move(arrow_length);
  b->weight_graded = respects(p, arrow_weight);
  b->arrow_weight = std::move(arrow_weight);
  b->pres = std::move(p);
  return b;
}

PathCatalog::PathCatalog(const GradedBase& base, int max_length)
    : max_length_(max_length), vertex_count_(base.quiver().vertex_count()) {
  const auto& q = base.quiver();
  std::function<void(Path&, int)> extend = [&](Path& path, int len) {
    paths_[{path.source, path.target, len}].push_back(path);
    for (ArrowId a : q.out_arrows(path.target)) {
      int l = len + base.arrow_length[static_cast<std::size_t>(a)];
      if (l > max_length) continue;
      VertexId old = path.target;
      path.arrows.push_back(a);
      path.target = q.arrow(a).target;
      extend(path, l);
      path.target = old;
      path.arrows.pop_back();
    }
  };
  if (max_length < 0) return;
  for (VertexId v = 0; v < static_cast<VertexId>(vertex_count_); ++v) {
    Path p = Path::idempotent(v);
    extend(p, 0);
  }
  for (auto& [key, list] : paths_) std::sort(list.begin(), list.end());
}

const std::vector<Path>& PathCatalog::paths(VertexId source, VertexId target, int length) const {
  auto it = paths_.find({source, target, length});
  return it == paths_.end() ? empty_ : it->second;
}

std::vector<Path> PathCatalog::cycles(int length) const {
  std::vector<Path> out;
  for (VertexId v = 0; v < static_cast<VertexId>(vertex_count_); ++v) {
    const auto& l = paths(v, v, length);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

}  // namespace cyforge
