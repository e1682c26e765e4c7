#include "rlab/filtration.hpp"

#include <algorithm>
#include <string>

#include "rlab/error.hpp"

namespace rlab {

Filtration Filtration::from_steps(
    std::size_t ambient, std::vector<std::pair<int, Subspace>> steps) {
  Filtration f;
  f.ambient_ = ambient;
  if (ambient == 0) {
    for (const auto& [p, s] : steps)
      if (s.ambient_dim() != 0)
        throw InputError("filtration step at index " + std::to_string(p) +
                         " lives in the wrong ambient space");
    f.zero_from_ = 0;
    return f;
  }
  if (steps.empty())
    throw InputError("filtration needs at least one step");
  std::sort(steps.begin(), steps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k + 1 < steps.size(); ++k)
    if (steps[k].first == steps[k + 1].first)
      throw InputError("duplicate filtration step index " +
                       std::to_string(steps[k].first));
  for (const auto& [p, s] : steps) {
    if (s.ambient_dim() != ambient)
      throw InputError("filtration step at index " + std::to_string(p) +
                       " lives in the wrong ambient space");
  }
  for (std::size_t k = 0; k + 1 < steps.size(); ++k)
    if (!steps[k].second.contains(steps[k + 1].second))
      throw InputError(
          "filtration steps must descend: step at index " +
          std::to_string(steps[k + 1].first) +
          " is not contained in step at index " +
          std::to_string(steps[k].first));

  // First zero step, if any, fixes where the filtration vanishes.
  int zero_from = steps.back().first + 1;
  for (const auto& [p, s] : steps)
    if (s.dim() == 0) {
      zero_from = p;
      break;
    }

  Subspace full = Subspace::full(ambient);
  std::vector<std::pair<int, Subspace>> regions;
  Subspace prev = full;
  for (auto& [p, s] : steps) {
    if (p >= zero_from) break;
    if (s == prev) continue;
    prev = s;
    regions.emplace_back(p, std::move(s));
  }
  int anchor = (regions.empty() ? zero_from : regions.front().first) - 1;
  f.starts_.emplace_back(anchor, std::move(full));
  for (auto& r : regions) f.starts_.push_back(std::move(r));
  f.zero_from_ = zero_from;
  return f;
}

Filtration Filtration::trivial(std::size_t ambient, int last_full) {
  return from_steps(ambient, {{last_full, Subspace::full(ambient)}});
}

Subspace Filtration::at(int p) const {
  if (ambient_ == 0) return Subspace::zero(0);
  if (p >= zero_from_) return Subspace::zero(ambient_);
  // Last region starting at or before p; below the anchor it is full.
  const Subspace* value = &starts_.front().second;
  for (const auto& [start, space] : starts_) {
    if (start > p) break;
    value = &space;
  }
  return *value;
}

std::vector<int> Filtration::jumps() const {
  std::vector<int> out;
  if (ambient_ == 0) return out;
  for (std::size_t k = 1; k < starts_.size(); ++k)
    out.push_back(starts_[k].first);
  out.push_back(zero_from_);
  return out;
}

int Filtration::first_jump() const {
  auto j = jumps();
  return j.empty() ? 0 : j.front();
}

int Filtration::last_jump() const {
  auto j = jumps();
  return j.empty() ? 0 : j.back();
}

MultiFilteredSpace::MultiFilteredSpace(std::size_t dim,
                                       std::vector<Filtration> filtrations)
    : dim_(dim), filts_(std::move(filtrations)) {
  for (std::size_t i = 0; i < filts_.size(); ++i)
    if (filts_[i].ambient_dim() != dim_)
      throw InputError("filtration " + std::to_string(i) +
                       " has ambient dimension " +
                       std::to_string(filts_[i].ambient_dim()) +
                       ", expected " + std::to_string(dim_));
}

FilteredMap::FilteredMap(MultiFilteredSpace source, MultiFilteredSpace target,
                         Matrix matrix)
    : source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::move(matrix)) {
  if (source_.n() != target_.n())
    throw InputError("filtered map endpoints carry different filtration "
                     "counts");
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
    throw InputError("filtered map matrix has shape " +
                     std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " +
                     std::to_string(target_.dim()) + "x" +
                     std::to_string(source_.dim()));
  // Both sides are constant between jump indices, so checking the union
  // of the jump sets checks every integer.
  for (std::size_t i = 0; i < source_.n(); ++i) {
    std::vector<int> grid = source_.filtration(i).jumps();
    auto tj = target_.filtration(i).jumps();
    grid.insert(grid.end(), tj.begin(), tj.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (int p : grid) {
      Subspace img = image(matrix_, source_.filtration(i).at(p));
      if (!target_.filtration(i).at(p).contains(img))
        throw InputError("matrix does not respect filtration " +
                         std::to_string(i) + " at index " +
                         std::to_string(p));
    }
  }
}

Splitting::Splitting(std::map<Deg, Subspace> components) {
  for (auto& [p, s] : components)
    if (s.dim() > 0) components_.emplace(p, std::move(s));
}

std::map<Deg, std::size_t> Splitting::dims() const {
  std::map<Deg, std::size_t> out;
  for (const auto& [p, s] : components_) out.emplace(p, s.dim());
  return out;
}

std::vector<std::string> Splitting::violations(
    const MultiFilteredSpace& v) const {
  std::vector<std::string> bad;
  std::size_t total = 0;
  Matrix stacked(0, v.dim());
  for (const auto& [p, s] : components_) {
    if (p.size() != v.n()) {
      bad.push_back("component degree arity mismatch");
      return bad;
    }
    if (s.ambient_dim() != v.dim()) {
      bad.push_back("component ambient dimension mismatch");
      return bad;
    }
    total += s.dim();
    stacked = vstack(stacked, s.basis());
  }
  if (rank_of(stacked) != total)
    bad.push_back("components are not independent");
  if (total != v.dim()) bad.push_back("components do not span");
  for (std::size_t i = 0; i < v.n(); ++i) {
    const Filtration& f = v.filtration(i);
    int lo = f.first_jump() - 1, hi = f.last_jump() + 1;
    for (int r = lo; r <= hi; ++r) {
      Subspace acc = Subspace::zero(v.dim());
      for (const auto& [p, s] : components_)
        if (p[i] >= r) acc = sum(acc, s);
      if (!(acc == f.at(r)))
        bad.push_back("filtration " + std::to_string(i) +
                      " is not recovered at index " + std::to_string(r));
    }
  }
  return bad;
}

}  // namespace rlab
