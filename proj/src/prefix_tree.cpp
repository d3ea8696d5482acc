#include <map>

#include "swc/prefix_tree.hpp"

namespace swc {

ScenarioPrefixTree build_prefix_tree(std::vector<ScenarioPath> paths, bool share) {
  if (paths.empty()) throw InvalidArgument("build_prefix_tree: empty path list");
  const int periods = paths.front().periods();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].periods() != periods) {
      throw InvalidArgument("build_prefix_tree: path " + std::to_string(i) + " has " +
                            std::to_string(paths[i].periods()) + " stages, expected " +
                            std::to_string(periods));
    }
  }
  ScenarioPrefixTree tree;
  tree.periods_ = periods;
  tree.share_ = share;
  tree.parent_.assign(periods, {});
  tree.representative_.assign(periods, {});
  const std::size_t n = paths.size();
  tree.path_node_.assign(n * periods, -1);

  for (int t = 1; t <= periods; ++t) {
    std::map<std::pair<int, std::vector<double>>, int> index;
    auto& parents = tree.parent_[t - 1];
    auto& reps = tree.representative_[t - 1];
    for (std::size_t i = 0; i < n; ++i) {
      const int up = t == 1 ? -1 : tree.path_node_[i * periods + (t - 2)];
      int node = -1;
      if (share) {
        auto [it, fresh] = index.try_emplace({up, paths[i].realizations[t - 1]},
                                             static_cast<int>(parents.size()));
        node = it->second;
        if (fresh) {
          parents.push_back(up);
          reps.push_back(static_cast<int>(i));
        }
      } else {
        node = static_cast<int>(parents.size());
        parents.push_back(up);
        reps.push_back(static_cast<int>(i));
      }
      tree.path_node_[i * periods + (t - 1)] = node;
    }
  }
  tree.paths_ = std::move(paths);
  return tree;
}

}  // namespace swc
