#include "lebesgue/audit.hpp"

#include <algorithm>

#include "lebesgue/error.hpp"

namespace lebesgue {

void AuditReport::pass(std::string name, std::string detail) {
  checks.push_back({std::move(name), Verdict::Pass, std::nullopt, std::move(detail)});
}

void AuditReport::fail(std::string name, std::string witness, std::string detail) {
  checks.push_back({std::move(name), Verdict::Fail, std::move(witness), std::move(detail)});
}

void AuditReport::add(std::string name, bool ok, const std::string& witness, std::string detail) {
  if (ok) {
    pass(std::move(name), std::move(detail));
  } else {
    fail(std::move(name), witness, std::move(detail));
  }
}

bool AuditReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.verdict == Verdict::Pass; });
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const AuditCheck& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

Verdict AuditReport::verdict(const std::string& name) const {
  const AuditCheck* c = find(name);
  if (c == nullptr) throw KernelError(ErrorCode::InvalidArgument, "no audit check named " + name);
  return c->verdict;
}

}  // namespace lebesgue
