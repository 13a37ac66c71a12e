#include "sumfree/vertex_set.hpp"

namespace sumfree {

std::string VertexSet::to_string(char sep) const {
  std::string out;
  for_each([&](std::size_t v) {
    if (!out.empty()) out += sep;
    out += std::to_string(v);
  });
  return out;
}

}  // namespace sumfree
