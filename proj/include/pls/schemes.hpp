#pragma once

#include <memory>

#include "pls/engine.hpp"
#include "pls/languages.hpp"

namespace pls {

// Instance-level parameters every verifier needs to decode fixed-width
// certificate fields.
struct SchemeContext {
  std::size_t n = 0;
  NodeId max_id = 0;
  unsigned id_width() const { return id_field_width(max_id); }
  static SchemeContext of(const Graph& g) { return {g.node_count(), g.max_id()}; }
};

struct StCert {
  NodeId root = 0;    // I: claimed root id
  NodeId parent = 0;  // P: claimed parent id, self if root
  std::uint64_t dist = 0;
  bool operator==(const StCert&) const = default;
};

void encode_st_cert(const StCert& c, unsigned width, Bits& out);
std::optional<StCert> decode_st_cert(BitReader& r, unsigned width);

class AcyclicScheme : public Scheme {
 public:
  explicit AcyclicScheme(SchemeContext ctx) : ctx_(ctx) {}
  std::string name() const override { return "acyclic"; }
  std::optional<CertificateMap> prove(const LabeledGraph& instance) const override;
  bool verify_local(const LocalView& view) const override;
  std::size_t certificate_size_bound(std::size_t n, NodeId max_id) const override;
  bool rejects_partial(const PartialLocalView& view) const override;

 private:
  SchemeContext ctx_;
};

class StScheme : public Scheme {
 public:
  explicit StScheme(SchemeContext ctx) : ctx_(ctx) {}
  std::string name() const override { return "st"; }
  std::optional<CertificateMap> prove(const LabeledGraph& instance) const override;
  bool verify_local(const LocalView& view) const override;
  std::size_t certificate_size_bound(std::size_t n, NodeId max_id) const override;
  bool rejects_partial(const PartialLocalView& view) const override;

 private:
  SchemeContext ctx_;
};

class StpScheme : public Scheme {
 public:
  explicit StpScheme(SchemeContext ctx) : ctx_(ctx) {}
  std::string name() const override { return "stp"; }
  std::optional<CertificateMap> prove(const LabeledGraph& instance) const override;
  bool verify_local(const LocalView& view) const override;
  std::size_t certificate_size_bound(std::size_t n, NodeId max_id) const override;
  bool rejects_partial(const PartialLocalView& view) const override;

 private:
  SchemeContext ctx_;
};

class UniversalScheme : public Scheme {
 public:
  UniversalScheme(LanguageId lang, SchemeContext ctx) : lang_(lang), ctx_(ctx) {}
  std::string name() const override { return "universal-" + language_name(lang_); }
  std::optional<CertificateMap> prove(const LabeledGraph& instance) const override;
  bool verify_local(const LocalView& view) const override;
  std::size_t certificate_size_bound(std::size_t n, NodeId max_id) const override;
  bool rejects_partial(const PartialLocalView& view) const override;

  // canonical whole-instance encoding shared by prover and the bounded
  // certificate space builder
  static Certificate encode_instance(const LabeledGraph& instance);

 private:
  LanguageId lang_;
  SchemeContext ctx_;
};

class WrappedScheme : public Scheme {
 public:
  WrappedScheme(std::shared_ptr<const Scheme> inner, SchemeContext ctx)
      : inner_(std::move(inner)), ctx_(ctx) {}
  std::string name() const override { return "wrapped-" + inner_->name(); }
  std::optional<CertificateMap> prove(const LabeledGraph& instance) const override;
  bool verify_local(const LocalView& view) const override;
  std::size_t certificate_size_bound(std::size_t n, NodeId max_id) const override;
  bool rejects_partial(const PartialLocalView& view) const override;

  struct Parts {
    Certificate inner;
    StCert tree;
    bool b = false;
  };
  std::optional<Parts> split(const Certificate& cert) const;
  Certificate join(const Parts& parts) const;
  const Scheme& inner() const { return *inner_; }

 private:
  std::shared_ptr<const Scheme> inner_;
  SchemeContext ctx_;
};

// Names: acyclic, st, stp, mst, universal-<language>, wrapped-acyclic.
std::shared_ptr<const Scheme> make_scheme(const std::string& name, SchemeContext ctx);

}  // namespace pls
