#include "mgw/moyal.hpp"

namespace mgw::moyal {

Field word(const std::vector<Letter>& letters, const WordContext& ctx) {
  std::size_t first = letters.size();
  for (std::size_t i = 0; i < letters.size(); ++i)
    if (letters[i].kind == Letter::Value) {
      first = i;
      break;
    }
  if (first == letters.size()) throw PreconditionError("word needs at least one field letter");

  Field r = *letters[first].field;
  for (std::size_t i = first + 1; i < letters.size(); ++i) {
    const Letter& l = letters[i];
    switch (l.kind) {
      case Letter::Value: r = star(r, *l.field, ctx.theta, ctx.backend); break;
      case Letter::Tilde: r = tilde_right(r, ctx.theta, l.axis, ctx.frame); break;
      case Letter::Coord: r = coord_right(r, ctx.theta, l.axis); break;
    }
  }
  for (std::size_t i = first; i-- > 0;) {
    const Letter& l = letters[i];
    switch (l.kind) {
      case Letter::Value: r = star(*l.field, r, ctx.theta, ctx.backend); break;
      case Letter::Tilde: r = tilde_left(r, ctx.theta, l.axis, ctx.frame); break;
      case Letter::Coord: r = coord_left(r, ctx.theta, l.axis); break;
    }
  }
  return r;
}

Field word_commutator(const std::vector<Letter>& a, const std::vector<Letter>& b,
                      const WordContext& ctx) {
  std::vector<Letter> ab(a), ba(b);
  ab.insert(ab.end(), b.begin(), b.end());
  ba.insert(ba.end(), a.begin(), a.end());
  return word(ab, ctx) - word(ba, ctx);
}

}  // namespace mgw::moyal
