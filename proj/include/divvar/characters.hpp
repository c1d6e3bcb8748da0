#pragma once

// Dirichlet character groups mod d. A character is an exponent vector against
// fixed generators of the cyclic components of (Z/dZ)^x: the least primitive
// root for each odd prime power, and -1, 5 for 2^e (e >= 3).

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "divvar/arith.hpp"

namespace divvar {

using cplx = std::complex<double>;

inline constexpr u64 kMaxCharacterModulus = 10'000'000;

enum class ComponentKind { Cyclic, TwoSign, TwoFive };

struct CharacterComponent {
    ComponentKind kind;
    u64 prime;
    int exponent;       // of the prime power this component lives in
    u64 prime_power;
    u64 order;
    u64 local_generator;  // mod prime_power
    u64 generator;        // mod d, == 1 modulo the other prime powers
};

class DirichletCharacter;

class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
    static std::shared_ptr<const CharacterGroup> create(u64 d);

    u64 modulus() const { return d_; }
    const Factorization& factorization() const { return fact_; }
    std::span<const CharacterComponent> components() const { return comps_; }
    /// phi(d), the number of characters.
    u64 size() const { return size_; }
    /// lcm of component orders; character values are exponent()-th roots of unity.
    u64 exponent() const { return exponent_; }

    bool is_unit(i64 n) const;
    /// Discrete logs of n against each component generator; false for non-units.
    bool logs(i64 n, std::span<u64> out) const;
    /// exp(2 pi i j / exponent()).
    cplx root(u64 j) const;

    DirichletCharacter character(u64 index) const;
    DirichletCharacter character_from_exponents(std::vector<u64> exps) const;
    DirichletCharacter principal() const;

private:
    explicit CharacterGroup(u64 d);

    struct LocalTable {
        u64 prime_power;
        std::vector<std::uint32_t> log;  // UINT32_MAX for non-units
        std::size_t first_component;
        int n_components;
    };

    u64 d_;
    Factorization fact_;
    std::vector<CharacterComponent> comps_;
    std::vector<LocalTable> tables_;
    u64 size_ = 1;
    u64 exponent_ = 1;
    std::vector<cplx> roots_;
};

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<u64> exps);

    const CharacterGroup& group() const { return *group_; }
    std::shared_ptr<const CharacterGroup> group_ptr() const { return group_; }
    u64 modulus() const { return group_->modulus(); }
    std::span<const u64> exponents() const { return exps_; }

    /// chi(n) = exp(2 pi i angle / group().exponent()); nullopt when gcd(n, d) > 1.
    std::optional<u64> angle(i64 n) const;
    cplx operator()(i64 n) const;

    u64 conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == modulus(); }
    bool is_principal() const;
    /// 1 iff chi(-1) = -1.
    int parity() const { return parity_; }
    u64 order() const;

    /// chi(n) for n = 0..d-1.
    std::vector<cplx> value_table() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.exps_ == b.exps_;
    }

private:
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<u64> exps_;
    u64 conductor_ = 1;
    int parity_ = 0;
};

std::shared_ptr<const CharacterGroup> character_group(u64 d);
std::vector<DirichletCharacter> enumerate_characters(u64 d);
std::vector<DirichletCharacter> enumerate_primitive(u64 q);

cplx char_eval(const DirichletCharacter& chi, i64 n);
u64 conductor(const DirichletCharacter& chi);
/// The character mod d with values chi1(n) [gcd(n, d) = 1].
DirichletCharacter induce(const DirichletCharacter& chi1, u64 d);

cplx gauss_sum(const DirichletCharacter& chi);

/// sum over primitive chi mod q of chi(m) conj(chi(n)) through the divisor
/// formula sum_{q = q2 r2, r2 | m - n} mu(q2) phi(r2).
double primitive_orthogonality_sum(u64 q, i64 m, i64 n);
/// Same quantity by brute force over enumerated primitive characters.
cplx primitive_orthogonality_brute(u64 q, i64 m, i64 n);

}  // namespace divvar
