#ifndef UMW_GROUND_HPP
#define UMW_GROUND_HPP

#include <map>
#include <string>
#include <vector>

namespace umw {

/// Ordered set of opaque element identifiers. The order of `names()` is the
/// canonical enumeration used by every deterministic algorithm in the
/// library; two ground sets compare equal only if they list the same names
/// in the same order.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(const std::string& name) const;
  int index(const std::string& name) const;  // throws UnknownElement

  bool operator==(const GroundSet& o) const { return names_ == o.names_; }
  bool operator!=(const GroundSet& o) const { return !(*this == o); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

}  // namespace umw

#endif
