#ifndef GRADARG_KERNEL_TEXT_HPP
#define GRADARG_KERNEL_TEXT_HPP

// Compact text form of kernel descriptors.
//
//   desc    := 'hc' | 'mb' | 'cb' | 'zero'
//            | 'lp:' (NUMBER | 'inf')
//            | 'gm' [ ':' NUMBER (',' NUMBER)* ]
//            | 'lin:' [ term ('+' term)* ]
//            | 'geo:' operand (',' operand)*
//   term    := NUMBER '*' operand
//   operand := '(' desc ')' | 'hc' | 'mb' | 'cb' | 'zero' | 'lp:' (NUMBER | 'inf') | 'gm'
//
// Examples: `hc`, `lp:2`, `lin:0.5*hc+0.5*mb`, `geo:hc,(lin:2*mb)`.
// Whitespace is ignored. `zero` and `lin:` both denote the zero kernel.

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "gradarg/kernels.hpp"

namespace gradarg {

namespace detail {

inline std::string format_number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

class KernelTextParser {
 public:
  explicit KernelTextParser(std::string_view text) : text_(text) {}

  KernelDescriptor parse() {
    KernelDescriptor d = desc();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::syntax_error,
                msg + " at offset " + std::to_string(pos_) + " in semantics \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  bool at_end_or(std::string_view stops) {
    skip();
    return pos_ == text_.size() || stops.find(text_[pos_]) != std::string_view::npos;
  }

  double number() {
    skip();
    if (accept("inf")) return std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc() || ptr == text_.data() + pos_) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  // Atoms shared by top-level descriptors and operands. Returns false if none matches.
  bool simple(KernelDescriptor& out, bool allow_gm_params) {
    if (accept("hc")) {
      out.node = HCategorizer{};
    } else if (accept("mb")) {
      out.node = MaxBased{};
    } else if (accept("cb")) {
      out.node = CardBased{};
    } else if (accept("zero")) {
      out.node = LinearCombination{};
    } else if (accept("lp:")) {
      out.node = LpNorm{number()};
    } else if (accept("gm")) {
      GeometricMean g;
      if (allow_gm_params && accept(":")) {
        g.b.push_back(number());
        while (accept(",")) g.b.push_back(number());
      }
      out.node = std::move(g);
    } else {
      return false;
    }
    return true;
  }

  KernelDescriptor operand() {
    if (accept("(")) {
      KernelDescriptor d = desc();
      expect(")");
      return d;
    }
    KernelDescriptor d;
    if (!simple(d, false)) fail("expected a kernel operand");
    return d;
  }

  KernelDescriptor desc() {
    KernelDescriptor d;
    if (accept("lin:")) {
      LinearCombination lin;
      if (!at_end_or(")")) {
        do {
          const double c = number();
          expect("*");
          lin.terms.push_back({c, operand()});
        } while (accept("+"));
      }
      d.node = std::move(lin);
    } else if (accept("geo:")) {
      GeometricCombination geo;
      do {
        geo.parts.push_back(operand());
      } while (accept(","));
      d.node = std::move(geo);
    } else if (!simple(d, true)) {
      fail("unknown kernel");
    }
    return d;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Throws Error{syntax_error}; parameter errors surface when the descriptor is wrapped in a Kernel.
inline KernelDescriptor parse_kernel_descriptor(std::string_view text) {
  return detail::KernelTextParser(text).parse();
}

inline Kernel parse_kernel(std::string_view text) { return Kernel(parse_kernel_descriptor(text)); }

inline std::string to_string(const KernelDescriptor& d);

namespace detail {

inline bool needs_parens(const KernelDescriptor& d) {
  if (const auto* g = std::get_if<GeometricMean>(&d.node)) return !g->b.empty();
  if (const auto* lin = std::get_if<LinearCombination>(&d.node)) return !lin->terms.empty();
  return std::holds_alternative<GeometricCombination>(d.node);
}

inline std::string render_operand(const KernelDescriptor& d) {
  return needs_parens(d) ? "(" + to_string(d) + ")" : to_string(d);
}

}  // namespace detail

inline std::string to_string(const KernelDescriptor& d) {
  return std::visit(detail::overloaded{
                        [](const MaxBased&) { return std::string("mb"); },
                        [](const CardBased&) { return std::string("cb"); },
                        [](const HCategorizer&) { return std::string("hc"); },
                        [](const GeometricMean& g) {
                          std::string s = "gm";
                          for (std::size_t i = 0; i < g.b.size(); ++i) {
                            s += (i == 0 ? ":" : ",") + detail::format_number(g.b[i]);
                          }
                          return s;
                        },
                        [](const LpNorm& l) { return "lp:" + detail::format_number(l.p); },
                        [](const LinearCombination& lin) {
                          if (lin.terms.empty()) return std::string("zero");
                          std::string s = "lin:";
                          for (std::size_t k = 0; k < lin.terms.size(); ++k) {
                            if (k != 0) s += "+";
                            s += detail::format_number(lin.terms[k].coefficient) + "*" +
                                 detail::render_operand(lin.terms[k].kernel);
                          }
                          return s;
                        },
                        [](const GeometricCombination& geo) {
                          std::string s = "geo:";
                          for (std::size_t k = 0; k < geo.parts.size(); ++k) {
                            if (k != 0) s += ",";
                            s += detail::render_operand(geo.parts[k]);
                          }
                          return s;
                        },
                    },
                    d.node);
}

inline std::string to_string(const Kernel& k) { return to_string(k.descriptor()); }

}  // namespace gradarg

#endif  // GRADARG_KERNEL_TEXT_HPP
