#include "divvar/characters.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace divvar {

namespace {

using u128 = unsigned __int128;
constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kMaxComponents = 16;
constexpr u64 kRootTableLimit = u64{1} << 20;

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % m);
        b = static_cast<u64>(static_cast<u128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

u64 inverse_mod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        i64 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::logic_error("inverse_mod: not invertible");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

// Least g with g a primitive root mod p^e, p odd.
u64 least_primitive_root(u64 p, int e) {
    const auto pm1 = factorize(p - 1);
    for (u64 g = 2;; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (const auto& [r, _] : pm1.factors) {
            if (powmod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok && e >= 2 && powmod(g, p - 1, p * p) == 1) ok = false;
        if (ok) return g;
    }
}

u64 reduce(i64 n, u64 d) {
    i64 r = n % static_cast<i64>(d);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(d) : r);
}

int valuation(u64 n, u64 p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

u64 ipow(u64 b, int e) {
    u64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

CharacterGroup::CharacterGroup(u64 d) : d_(d) {
    fact_ = factorize(d);
    for (const auto& [p, e] : fact_.factors) {
        const u64 pe = ipow(p, e);
        LocalTable table{pe, std::vector<std::uint32_t>(pe, kNoLog), comps_.size(), 0};
        const u64 rest = d / pe;
        auto lift = [&](u64 g) {
            // x = g mod pe, x = 1 mod rest.
            if (rest == 1) return g % pe;
            const u64 t = static_cast<u64>(static_cast<u128>((g + pe - 1) % pe) * inverse_mod(rest % pe, pe) % pe);
            return 1 + rest * t;
        };
        if (p != 2) {
            const u64 g = least_primitive_root(p, e);
            const u64 order = pe / p * (p - 1);
            u64 v = 1;
            for (u64 i = 0; i < order; ++i) {
                table.log[v] = static_cast<std::uint32_t>(i);
                v = v * g % pe;
            }
            comps_.push_back({ComponentKind::Cyclic, p, e, pe, order, g, lift(g)});
            table.n_components = 1;
        } else if (e == 1) {
            table.log[1] = 0;
        } else if (e == 2) {
            table.log[1] = 0;
            table.log[3] = 1;
            comps_.push_back({ComponentKind::TwoSign, 2, 2, 4, 2, 3, lift(3)});
            table.n_components = 1;
        } else {
            const u64 order5 = pe / 4;
            u64 v = 1;
            for (u64 i = 0; i < order5; ++i) {
                table.log[v] = static_cast<std::uint32_t>(2 * i);
                table.log[pe - v] = static_cast<std::uint32_t>(2 * i + 1);
                v = v * 5 % pe;
            }
            comps_.push_back({ComponentKind::TwoSign, 2, e, pe, 2, pe - 1, lift(pe - 1)});
            comps_.push_back({ComponentKind::TwoFive, 2, e, pe, order5, 5, lift(5)});
            table.n_components = 2;
        }
        tables_.push_back(std::move(table));
    }
    for (const auto& c : comps_) {
        size_ *= c.order;
        exponent_ = std::lcm(exponent_, c.order);
    }
    if (exponent_ <= kRootTableLimit) {
        roots_.resize(exponent_);
        for (u64 j = 0; j < exponent_; ++j) {
            roots_[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(exponent_));
        }
    }
}

std::shared_ptr<const CharacterGroup> CharacterGroup::create(u64 d) {
    if (d == 0) throw std::invalid_argument("character_group: modulus must be positive");
    if (d > kMaxCharacterModulus) {
        throw std::invalid_argument("character_group: modulus " + std::to_string(d) + " exceeds the discrete-log table bound " +
                                    std::to_string(kMaxCharacterModulus) +
                                    "; use the direct (class-sum) variance route for larger moduli");
    }
    return std::shared_ptr<const CharacterGroup>(new CharacterGroup(d));
}

bool CharacterGroup::is_unit(i64 n) const { return gcd(reduce(n, d_), d_) == 1; }

bool CharacterGroup::logs(i64 n, std::span<u64> out) const {
    const u64 r = reduce(n, d_);
    for (const auto& t : tables_) {
        const std::uint32_t v = t.log[r % t.prime_power];
        if (v == kNoLog) return false;
        if (t.n_components == 1) {
            out[t.first_component] = v;
        } else if (t.n_components == 2) {
            out[t.first_component] = v & 1u;
            out[t.first_component + 1] = v >> 1;
        }
    }
    return true;
}

cplx CharacterGroup::root(u64 j) const {
    j %= exponent_;
    if (!roots_.empty()) return roots_[j];
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(exponent_));
}

DirichletCharacter CharacterGroup::character(u64 index) const {
    if (index >= size_) throw std::out_of_range("CharacterGroup::character: index out of range");
    std::vector<u64> exps(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        exps[i] = index % comps_[i].order;
        index /= comps_[i].order;
    }
    return DirichletCharacter(shared_from_this(), std::move(exps));
}

DirichletCharacter CharacterGroup::character_from_exponents(std::vector<u64> exps) const {
    return DirichletCharacter(shared_from_this(), std::move(exps));
}

DirichletCharacter CharacterGroup::principal() const { return character(0); }

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<u64> exps)
    : group_(std::move(group)), exps_(std::move(exps)) {
    const auto comps = group_->components();
    if (exps_.size() != comps.size()) throw std::invalid_argument("DirichletCharacter: exponent vector has wrong length");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (exps_[i] >= comps[i].order) throw std::invalid_argument("DirichletCharacter: exponent exceeds component order");
    }
    // Conductor is the product of local conductors.
    conductor_ = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto& c = comps[i];
        switch (c.kind) {
            case ComponentKind::Cyclic: {
                if (exps_[i] == 0) break;
                const u64 o = c.order / std::gcd(exps_[i], c.order);
                conductor_ *= ipow(c.prime, 1 + valuation(o, c.prime));
                break;
            }
            case ComponentKind::TwoSign: {
                const bool has_five = i + 1 < comps.size() && comps[i + 1].kind == ComponentKind::TwoFive;
                const u64 x5 = has_five ? exps_[i + 1] : 0;
                if (x5 == 0) {
                    if (exps_[i] != 0) conductor_ *= 4;
                } else {
                    const u64 o = comps[i + 1].order / std::gcd(x5, comps[i + 1].order);
                    conductor_ *= ipow(2, valuation(o, 2) + 2);
                }
                break;
            }
            case ComponentKind::TwoFive:
                break;  // folded into TwoSign
        }
    }
    const auto a = angle(-1);
    parity_ = (a && *a != 0) ? 1 : 0;
}

std::optional<u64> DirichletCharacter::angle(i64 n) const {
    const auto comps = group_->components();
    std::array<u64, kMaxComponents> logs{};
    if (!group_->logs(n, logs)) return std::nullopt;
    const u64 m = group_->exponent();
    u128 acc = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        acc += static_cast<u128>(exps_[i]) * logs[i] % comps[i].order * (m / comps[i].order);
    }
    return static_cast<u64>(acc % m);
}

cplx DirichletCharacter::operator()(i64 n) const {
    const auto a = angle(n);
    return a ? group_->root(*a) : cplx{0.0, 0.0};
}

bool DirichletCharacter::is_principal() const {
    for (u64 x : exps_) {
        if (x != 0) return false;
    }
    return true;
}

u64 DirichletCharacter::order() const {
    u64 o = 1;
    const auto comps = group_->components();
    for (std::size_t i = 0; i < comps.size(); ++i) o = std::lcm(o, comps[i].order / std::gcd(exps_[i], comps[i].order));
    return o;
}

std::vector<cplx> DirichletCharacter::value_table() const {
    const u64 d = modulus();
    std::vector<cplx> out(d);
    for (u64 r = 0; r < d; ++r) out[r] = (*this)(static_cast<i64>(r));
    return out;
}

std::shared_ptr<const CharacterGroup> character_group(u64 d) { return CharacterGroup::create(d); }

std::vector<DirichletCharacter> enumerate_characters(u64 d) {
    const auto g = character_group(d);
    std::vector<DirichletCharacter> out;
    out.reserve(g->size());
    for (u64 i = 0; i < g->size(); ++i) out.push_back(g->character(i));
    return out;
}

std::vector<DirichletCharacter> enumerate_primitive(u64 q) {
    const auto g = character_group(q);
    std::vector<DirichletCharacter> out;
    for (u64 i = 0; i < g->size(); ++i) {
        auto chi = g->character(i);
        if (chi.is_primitive()) out.push_back(std::move(chi));
    }
    return out;
}

cplx char_eval(const DirichletCharacter& chi, i64 n) { return chi(n); }

u64 conductor(const DirichletCharacter& chi) { return chi.conductor(); }

DirichletCharacter induce(const DirichletCharacter& chi1, u64 d) {
    const u64 q = chi1.modulus();
    if (d == 0 || d % q != 0) {
        throw std::invalid_argument("induce: target modulus " + std::to_string(d) + " is not a multiple of " +
                                    std::to_string(q));
    }
    const auto g = character_group(d);
    const u64 m1 = chi1.group().exponent();
    const auto comps = g->components();
    std::vector<u64> exps(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const u64 a = *chi1.angle(static_cast<i64>(comps[i].generator));
        const u128 num = static_cast<u128>(a) * comps[i].order;
        if (num % m1 != 0) throw std::logic_error("induce: generator value is not a root of the component order");
        exps[i] = static_cast<u64>(num / m1 % comps[i].order);
    }
    return g->character_from_exponents(std::move(exps));
}

cplx gauss_sum(const DirichletCharacter& chi) {
    const u64 d = chi.modulus();
    if (d > 1'000'000) throw std::invalid_argument("gauss_sum: direct summation limited to d <= 10^6");
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    auto kahan = [](double& s, double& c, double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    };
    for (u64 b = 0; b < d; ++b) {
        const cplx v = chi(static_cast<i64>(b));
        if (v == cplx{}) continue;
        const cplx term = v * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(d));
        kahan(re, cre, term.real());
        kahan(im, cim, term.imag());
    }
    return {re, im};
}

double primitive_orthogonality_sum(u64 q, i64 m, i64 n) {
    if (q == 0) throw std::invalid_argument("primitive_orthogonality_sum: q must be positive");
    if (gcd(reduce(m, q), q) != 1 || gcd(reduce(n, q), q) != 1) {
        throw std::invalid_argument("primitive_orthogonality_sum: requires gcd(mn, q) = 1");
    }
    const auto f = factorize(q);
    const i64 diff = m - n;
    i64 acc = 0;
    for (u64 r2 : divisors(f)) {
        if (diff % static_cast<i64>(r2) != 0) continue;
        acc += static_cast<i64>(moebius(q / r2)) * static_cast<i64>(euler_phi(r2));
    }
    return static_cast<double>(acc);
}

cplx primitive_orthogonality_brute(u64 q, i64 m, i64 n) {
    cplx acc{};
    for (const auto& chi : enumerate_primitive(q)) acc += chi(m) * std::conj(chi(n));
    return acc;
}

}  // namespace divvar
