#include "umw/ground.hpp"

#include "umw/error.hpp"

namespace umw {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    auto [it, fresh] = index_.emplace(names_[static_cast<size_t>(i)], i);
    if (!fresh)
      throw Error(ErrorClass::InvalidInput,
                  "duplicate ground element '" + names_[static_cast<size_t>(i)] + "'");
  }
}

bool GroundSet::contains(const std::string& name) const {
  return index_.count(name) > 0;
}

int GroundSet::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error(ErrorClass::UnknownElement, "no ground element '" + name + "'");
  return it->second;
}

}  // namespace umw
