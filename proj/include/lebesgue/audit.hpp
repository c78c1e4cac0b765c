#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lebesgue {

enum class Verdict { Pass, Fail };

inline const char* to_string(Verdict v) { return v == Verdict::Pass ? "pass" : "fail"; }

/// One named check of an audit. Failing checks always carry a witness.
struct AuditCheck {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::optional<std::string> witness;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;

  void pass(std::string name, std::string detail = {});
  void fail(std::string name, std::string witness, std::string detail = {});
  void add(std::string name, bool ok, const std::string& witness, std::string detail = {});

  bool passed() const;
  const AuditCheck* find(const std::string& name) const;
  // Verdict of the named check; throws InvalidArgument when absent.
  Verdict verdict(const std::string& name) const;
};

}  // namespace lebesgue
