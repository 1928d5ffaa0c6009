#include "monoq/window.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "monoq/text.hpp"

namespace monoq {

struct Window::Impl {
    Shape shape;
    std::vector<Rational> elements;
    mutable std::once_flag index_once;
    mutable std::unordered_map<Rational, std::size_t> index;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_prime(std::int64_t p) {
    if (p < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

void validate(const Window::Shape& shape) {
    std::visit(overloaded{
                   [](const IntegerInterval& w) {
                       if (w.lo > w.hi) {
                           throw Error("integer window needs lo <= hi");
                       }
                   },
                   [](const FareyWindow& w) {
                       if (w.n < 1) {
                           throw Error("Farey window needs N >= 1");
                       }
                   },
                   [](const MultiplicativeGrid& w) {
                       if (w.primes.empty()) {
                           throw Error("multiplicative grid needs at least one prime");
                       }
                       if (w.exponent_bound < 0) {
                           throw Error("multiplicative grid needs E >= 0");
                       }
                       auto sorted = w.primes;
                       std::sort(sorted.begin(), sorted.end());
                       if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                           throw Error("multiplicative grid primes must be distinct");
                       }
                       for (auto p : w.primes) {
                           if (!is_prime(p)) {
                               throw Error("multiplicative grid base " + std::to_string(p) + " is not prime");
                           }
                       }
                   },
               },
               shape);
}

std::vector<Rational> build_elements(const Window::Shape& shape) {
    std::vector<Rational> out;
    std::visit(overloaded{
                   [&](const IntegerInterval& w) {
                       for (std::int64_t v = w.lo; v <= w.hi; ++v) {
                           out.emplace_back(static_cast<long>(v));
                       }
                   },
                   [&](const FareyWindow& w) {
                       if (w.include_zero) {
                           out.emplace_back(0);
                       }
                       for (std::int64_t b = 1; b <= w.n; ++b) {
                           if (w.include_negatives) {
                               for (std::int64_t a = w.n; a >= 1; --a) {
                                   if (std::gcd(a, b) == 1) {
                                       out.push_back(Rational::make(-a, b));
                                   }
                               }
                           }
                           for (std::int64_t a = 1; a <= w.n; ++a) {
                               if (std::gcd(a, b) == 1) {
                                   out.push_back(Rational::make(a, b));
                               }
                           }
                       }
                   },
                   [&](const MultiplicativeGrid& w) {
                       const std::size_t k = w.primes.size();
                       std::vector<std::int64_t> exps(k, -w.exponent_bound);
                       while (true) {
                           Rational value(1);
                           for (std::size_t i = 0; i < k; ++i) {
                               value *= Rational(static_cast<long>(w.primes[i])).pow(static_cast<long>(exps[i]));
                           }
                           out.push_back(value);
                           std::size_t i = k;
                           while (i > 0 && exps[i - 1] == w.exponent_bound) {
                               exps[i - 1] = -w.exponent_bound;
                               --i;
                           }
                           if (i == 0) {
                               break;
                           }
                           ++exps[i - 1];
                       }
                       if (w.include_sign) {
                           const std::size_t positives = out.size();
                           for (std::size_t i = 0; i < positives; ++i) {
                               out.push_back(-out[i]);
                           }
                       }
                   },
               },
               shape);
    return out;
}

}  // namespace

std::size_t Window::cardinality(const Shape& shape) {
    return std::visit(overloaded{
                          [](const IntegerInterval& w) { return static_cast<std::size_t>(w.hi - w.lo + 1); },
                          [](const FareyWindow& w) {
                              if (w.n > 4096) {
                                  // Lower bound (6/pi^2 > 0.6); already past the default cap.
                                  const auto approx = static_cast<std::size_t>(0.6 * static_cast<double>(w.n) *
                                                                               static_cast<double>(w.n));
                                  return approx * (w.include_negatives ? 2 : 1);
                              }
                              std::size_t positives = 0;
                              for (std::int64_t b = 1; b <= w.n; ++b) {
                                  for (std::int64_t a = 1; a <= w.n; ++a) {
                                      positives += std::gcd(a, b) == 1 ? 1 : 0;
                                  }
                              }
                              return (w.include_zero ? 1 : 0) + positives * (w.include_negatives ? 2 : 1);
                          },
                          [](const MultiplicativeGrid& w) {
                              std::size_t count = w.include_sign ? 2 : 1;
                              const auto side = static_cast<std::size_t>(2 * w.exponent_bound + 1);
                              for (std::size_t i = 0; i < w.primes.size(); ++i) {
                                  if (count > kDefaultWindowCap * 16) {
                                      break;
                                  }
                                  count *= side;
                              }
                              return count;
                          },
                      },
                      shape);
}

Window::Window(Shape shape, std::size_t cap) {
    validate(shape);
    const std::size_t n = cardinality(shape);
    if (n > cap) {
        throw Error("window cap exceeded: " + std::to_string(n) + " elements > " + std::to_string(cap));
    }
    auto impl = std::make_shared<Impl>();
    impl->elements = build_elements(shape);
    impl->shape = std::move(shape);
    impl_ = std::move(impl);
}

const Window::Shape& Window::shape() const {
    return impl_->shape;
}

std::size_t Window::size() const {
    return impl_->elements.size();
}

const std::vector<Rational>& Window::elements() const {
    return impl_->elements;
}

std::optional<std::size_t> Window::index_of(const Rational& q) const {
    if (const auto* w = std::get_if<IntegerInterval>(&impl_->shape)) {
        if (!q.fits_int64()) {
            return std::nullopt;
        }
        const auto v = q.to_int64();
        if (v < w->lo || v > w->hi) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(v - w->lo);
    }
    const Impl& impl = *impl_;
    std::call_once(impl.index_once, [&impl] {
        impl.index.reserve(impl.elements.size());
        for (std::size_t i = 0; i < impl.elements.size(); ++i) {
            impl.index.emplace(impl.elements[i], i);
        }
    });
    const auto it = impl.index.find(q);
    if (it == impl.index.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string Window::spec() const {
    return std::visit(overloaded{
                          [](const IntegerInterval& w) {
                              return "int:" + std::to_string(w.lo) + ".." + std::to_string(w.hi);
                          },
                          [](const FareyWindow& w) {
                              std::string s = "farey:" + std::to_string(w.n);
                              if (!w.include_zero) {
                                  s += ":-zero";
                              }
                              if (w.include_negatives) {
                                  s += ":+neg";
                              }
                              return s;
                          },
                          [](const MultiplicativeGrid& w) {
                              std::string s = "mgrid:" +
                                              text::join(w.primes, ",", [](std::int64_t p) { return std::to_string(p); }) +
                                              ":" + std::to_string(w.exponent_bound);
                              if (w.include_sign) {
                                  s += ":+sign";
                              }
                              return s;
                          },
                      },
                      impl_->shape);
}

Window Window::parse(std::string_view spec, std::size_t cap) {
    const auto s = text::trim(spec);
    const auto parts = text::split(s, ':');
    const auto kind = text::trim(parts[0]);
    if (kind == "int") {
        if (parts.size() != 2) {
            throw Error("window spec 'int:lo..hi' expected, got '" + std::string(s) + "'");
        }
        const auto dots = parts[1].find("..");
        if (dots == std::string_view::npos) {
            throw Error("window spec 'int:lo..hi' expected, got '" + std::string(s) + "'");
        }
        IntegerInterval w{text::parse_int(parts[1].substr(0, dots)), text::parse_int(parts[1].substr(dots + 2))};
        return Window(w, cap);
    }
    if (kind == "farey") {
        if (parts.size() < 2) {
            throw Error("window spec 'farey:N' expected, got '" + std::string(s) + "'");
        }
        FareyWindow w;
        w.n = text::parse_int(parts[1]);
        for (std::size_t i = 2; i < parts.size(); ++i) {
            const auto flag = text::trim(parts[i]);
            if (flag == "+zero") {
                w.include_zero = true;
            } else if (flag == "-zero") {
                w.include_zero = false;
            } else if (flag == "+neg") {
                w.include_negatives = true;
            } else {
                throw Error("unknown Farey window flag '" + std::string(flag) + "'");
            }
        }
        return Window(w, cap);
    }
    if (kind == "mgrid") {
        if (parts.size() < 3 || parts.size() > 4) {
            throw Error("window spec 'mgrid:p1,p2,...:E' expected, got '" + std::string(s) + "'");
        }
        MultiplicativeGrid w;
        for (auto p : text::split(parts[1], ',')) {
            w.primes.push_back(text::parse_int(p));
        }
        w.exponent_bound = text::parse_int(parts[2]);
        if (parts.size() == 4) {
            if (text::trim(parts[3]) != "+sign") {
                throw Error("unknown grid flag '" + std::string(parts[3]) + "'");
            }
            w.include_sign = true;
        }
        return Window(w, cap);
    }
    throw Error("unknown window kind in '" + std::string(s) + "'");
}

std::vector<Rational> enumerate(const Window& w) {
    return w.elements();
}

}  // namespace monoq
