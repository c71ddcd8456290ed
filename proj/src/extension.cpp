#include "extension.hpp"

namespace sf {

ExtendOutcome extend_with_trace(const Instance& instance, const Fingerprint& t_plus,
                                const Fingerprint& t_tilde,
                                const std::map<SetKey, Rational>& y_b,
                                const Rational& epsilon) {
  if (!(epsilon > 0 && epsilon < 1))
    throw Error(ErrorCode::invalid_argument, "extend: epsilon must lie in (0,1)");
  if (t_plus.size() != instance.vertex_count || t_tilde.size() != instance.vertex_count)
    throw Error(ErrorCode::invalid_argument, "extend: fingerprint size mismatch");

  std::vector<Rational> g(static_cast<std::size_t>(instance.vertex_count), Rational(0));
  for (const auto& [key, growth] : y_b) {
    if (growth <= 0) continue;
    VertexId target = key.front();
    for (VertexId v : key)
      if (t_plus[v] > t_plus[target]) target = v;  // ties keep the smallest id
    g[target] += growth;
  }
  for (Rational& value : g) value *= epsilon;

  ExtendOutcome out;
  out.potentials = g;
  ExtendedResult extended = run_extended(instance, t_tilde, g);
  out.t_out = std::move(extended.t_out);
  out.trace = std::move(extended.trace);
  return out;
}

Fingerprint extend(const Instance& instance, const Fingerprint& t_plus,
                   const Fingerprint& t_tilde, const std::map<SetKey, Rational>& y_b,
                   const Rational& epsilon) {
  return extend_with_trace(instance, t_plus, t_tilde, y_b, epsilon).t_out;
}

}  // namespace sf
