#include "pls/engine.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace pls {

std::vector<NodeId> Verdict::rejecting_nodes() const {
  std::vector<NodeId> out;
  for (const auto& [v, ok] : accepted)
    if (!ok) out.push_back(v);
  return out;
}

std::map<NodeId, LocalView> build_views(const LabeledGraph& instance,
                                        const CertificateMap& certs) {
  const Graph& g = instance.graph;
  for (NodeId v : g.nodes())
    if (!certs.count(v))
      throw Error(ErrorCode::Precondition, "missing certificate for node " + std::to_string(v));
  std::map<NodeId, LocalView> views;
  for (NodeId v : g.nodes()) {
    LocalView view;
    view.id = v;
    view.label = instance.labels.at(v);
    view.cert = certs.at(v);
    for (NodeId w : g.neighbors(v)) {
      NeighborView nb;
      nb.id = w;
      nb.label = instance.labels.at(w);
      nb.cert = certs.at(w);
      if (g.weighted()) nb.weight_rank = g.weight_rank(v, w);
      view.neighbors.push_back(nb);
    }
    views.emplace(v, std::move(view));
  }
  return views;
}

Verdict run_verifier(const Scheme& scheme, const LabeledGraph& instance,
                     const CertificateMap& certs) {
  auto views = build_views(instance, certs);
  const auto& nodes = instance.graph.nodes();
  std::vector<char> ok(nodes.size());
  parallel_for(nodes.size(),
               [&](std::size_t i) { ok[i] = scheme.verify_local(views.at(nodes[i])); });
  Verdict verdict;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    verdict.accepted[nodes[i]] = ok[i];
    if (!ok[i]) ++verdict.rejections;
  }
  return verdict;
}

CompletenessReport check_completeness(const Scheme& scheme,
                                      const std::vector<LabeledGraph>& instances) {
  CompletenessReport report;
  for (const auto& instance : instances) {
    ++report.checked;
    auto certs = scheme.prove(instance);
    if (!certs) {
      report.failures.push_back("prover refused: " + serialize_instance(instance));
      continue;
    }
    Verdict v = run_verifier(scheme, instance, *certs);
    if (v.rejections > 0)
      report.failures.push_back("rejected at " + std::to_string(v.rejections) +
                                " nodes: " + serialize_instance(instance));
  }
  return report;
}

std::size_t thread_limit() {
  if (const char* env = std::getenv("PLSLAB_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end && *end == '\0' && n >= 1) return static_cast<std::size_t>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::min(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace pls
