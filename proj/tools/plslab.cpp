#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pls/constructions.hpp"
#include "pls/oracles.hpp"

namespace {

using namespace pls;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Precondition, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Precondition, "cannot write " + path);
  out << text;
}

std::shared_ptr<const Scheme> scheme_for(const std::string& name, const LabeledGraph& inst) {
  return make_scheme(name, SchemeContext::of(inst.graph));
}

int cmd_check(const std::string& file, const std::string& lang, std::uint64_t budget) {
  LabeledGraph inst = parse_instance(read_file(file));
  LanguageId l = parse_language(lang);
  if (decide_membership(l, inst)) {
    std::cout << "member, distance 0\n";
  } else {
    std::uint64_t d = edit_distance_to_language(l, inst, budget);
    std::cout << "nonmember, distance " << d << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& file, const std::string& schemeName,
               const std::string& certFile) {
  LabeledGraph inst = parse_instance(read_file(file));
  auto scheme = scheme_for(schemeName, inst);
  CertificateMap certs;
  if (!certFile.empty()) {
    certs = parse_certs(read_file(certFile));
  } else {
    auto honest = scheme->prove(inst);
    if (!honest)
      throw Error(ErrorCode::Precondition,
                  "prover refused (nonmember); pass --certs to verify adversarial maps");
    certs = *honest;
  }
  Verdict v = run_verifier(*scheme, inst, certs);
  for (NodeId node : inst.graph.nodes())
    std::cout << "node " << node << ": " << (v.accepted.at(node) ? "accept" : "reject")
              << " (certificate " << certs.at(node).bits.nbits << " bits)\n";
  std::cout << "rejections " << v.rejections << "\n";
  return 0;
}

int cmd_prove(const std::string& file, const std::string& schemeName, const std::string& out) {
  LabeledGraph inst = parse_instance(read_file(file));
  auto scheme = scheme_for(schemeName, inst);
  auto certs = scheme->prove(inst);
  if (!certs) throw Error(ErrorCode::Precondition, "prover refused: instance is a nonmember");
  std::string text = serialize_certs(*certs);
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

int cmd_attack(const std::string& file, const std::string& schemeName, std::uint64_t budget,
               std::uint64_t seed, const std::string& seedCerts, const std::string& out) {
  LabeledGraph inst = parse_instance(read_file(file));
  auto scheme = scheme_for(schemeName, inst);
  std::vector<CertificateMap> seeds;
  if (!seedCerts.empty()) seeds.push_back(parse_certs(read_file(seedCerts)));
  CertSpace space = cert_space_for(*scheme, inst, budget);
  SearchResult res = min_rejections(*scheme, inst, space, budget, seeds, seed);
  std::cout << "k-min " << res.k << (res.exhaustive ? " (exhaustive)" : " (upper bound)")
            << "\n";
  if (!out.empty()) write_file(out, serialize_certs(res.witness));
  return 0;
}

int cmd_sensitivity(const std::string& lang, const std::string& schemeName, std::size_t maxN,
                    std::size_t count, std::uint64_t seed, std::uint64_t budget,
                    const std::string& outDir) {
  LanguageId l = parse_language(lang);
  auto corpus = corrupted_corpus(l, maxN, count, seed);
  if (corpus.empty()) throw Error(ErrorCode::Precondition, "empty corpus");
  // schemes carry per-instance decode widths, so the sweep runs per size class
  std::filesystem::create_directories(outDir);
  SensitivityReport all;
  all.min_ratio = 0;
  bool any = false;
  for (auto& [id, inst] : corpus) {
    auto scheme = scheme_for(schemeName, inst);
    SensitivityReport one =
        sensitivity_sweep(*scheme, l, {{id, inst}}, budget, seed);
    if (all.note.empty()) all.note = one.note;
    for (auto& row : one.rows) {
      if (!any || row.ratio < all.min_ratio) all.min_ratio = row.ratio;
      any = true;
      write_file(outDir + "/" + row.witness_file, serialize_certs(row.witness));
      all.rows.push_back(std::move(row));
    }
  }
  write_file(outDir + "/report.csv", report_csv(all));
  write_file(outDir + "/report.json", report_json(all));
  std::cout << "rows " << all.rows.size() << ", min ratio " << all.min_ratio << "\n";
  return 0;
}

int cmd_probe(const std::string& lang, std::size_t maxN, std::vector<double> betas,
              std::uint64_t budget, std::uint64_t seed) {
  LanguageId l = parse_language(lang);
  if (betas.empty()) betas = {1.0};
  auto results = strong_local_stability_probe(l, maxN, betas, budget, seed);
  for (const ProbeResult& r : results) {
    std::cout << "beta " << r.beta << ": ";
    if (r.violation)
      std::cout << "violation (boundary " << r.violation->boundary << ", distance "
                << r.violation->distance << ")\n";
    else
      std::cout << "no violation in " << r.checked << " pastes\n";
  }
  return 0;
}

int cmd_construct(const std::string& kind, std::size_t n, std::size_t d1, std::size_t m1,
                  std::size_t d2, std::size_t m2, const std::string& instanceFile,
                  const std::string& out) {
  Construction c = [&] {
    if (kind == "path-stp") return build_path_stp(n);
    if (kind == "regular-glue") return build_regular_glue(d1, m1, d2, m2);
    if (kind == "wrapper-fake") {
      LabeledGraph inst = parse_instance(read_file(instanceFile));
      auto scheme = scheme_for("wrapped-acyclic", inst);
      auto wrapped = std::dynamic_pointer_cast<const WrappedScheme>(scheme);
      return Construction{inst, build_wrapper_fakes(*wrapped, inst)};
    }
    throw Error(ErrorCode::Precondition, "unknown construction: " + kind);
  }();
  write_file(out + ".instance.json", serialize_instance(c.instance));
  write_file(out + ".certs.json", serialize_certs(c.certs));
  std::cout << "wrote " << out << ".instance.json and " << out << ".certs.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof-labeling scheme experiments"};
  app.require_subcommand(1);

  std::string file, lang, scheme, certFile, out, seedCerts, kind;
  std::uint64_t budget = pls::kDefaultBudget;
  std::uint64_t seed = 1;
  std::size_t maxN = 6, count = 100, n = 10, d1 = 2, m1 = 6, d2 = 3, m2 = 6;
  std::vector<double> betas;

  auto* check = app.add_subcommand("check", "membership and edit distance");
  check->add_option("file", file)->required();
  check->add_option("--lang", lang)->required();
  check->add_option("--budget", budget);

  auto* verify = app.add_subcommand("verify", "run the one-round verifier");
  verify->add_option("file", file)->required();
  verify->add_option("--scheme", scheme)->required();
  verify->add_option("--certs", certFile);

  auto* prove = app.add_subcommand("prove", "emit honest certificates");
  prove->add_option("file", file)->required();
  prove->add_option("--scheme", scheme)->required();
  prove->add_option("--out", out);

  auto* attack = app.add_subcommand("attack", "minimize rejections over the bounded space");
  attack->add_option("file", file)->required();
  attack->add_option("--scheme", scheme)->required();
  attack->add_option("--budget", budget);
  attack->add_option("--seed", seed);
  attack->add_option("--seed-certs", seedCerts);
  attack->add_option("--out", out);

  auto* sens = app.add_subcommand("sensitivity", "rejections-vs-distance sweep");
  sens->add_option("--lang", lang)->required();
  sens->add_option("--scheme", scheme)->required();
  sens->add_option("--max-n", maxN);
  sens->add_option("--count", count);
  sens->add_option("--seed", seed);
  sens->add_option("--budget", budget);
  sens->add_option("--out", out)->required();

  auto* probe = app.add_subcommand("probe", "strong local stability search");
  probe->add_option("--lang", lang)->required();
  probe->add_option("--max-n", maxN);
  probe->add_option("--beta", betas);
  probe->add_option("--budget", budget);
  probe->add_option("--seed", seed);

  auto* construct = app.add_subcommand("construct", "emit a counterexample bundle");
  construct->add_option("kind", kind)->required();
  construct->add_option("--n", n);
  construct->add_option("--d1", d1);
  construct->add_option("--m1", m1);
  construct->add_option("--d2", d2);
  construct->add_option("--m2", m2);
  construct->add_option("--instance", file);
  construct->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(file, lang, budget);
    if (verify->parsed()) return cmd_verify(file, scheme, certFile);
    if (prove->parsed()) return cmd_prove(file, scheme, out);
    if (attack->parsed()) return cmd_attack(file, scheme, budget, seed, seedCerts, out);
    if (sens->parsed()) return cmd_sensitivity(lang, scheme, maxN, count, seed, budget, out);
    if (probe->parsed()) return cmd_probe(lang, maxN, betas, budget, seed);
    if (construct->parsed()) return cmd_construct(kind, n, d1, m1, d2, m2, file, out);
  } catch (const pls::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == pls::ErrorCode::Budget ? 3 : 2;
  }
  return 0;
}
