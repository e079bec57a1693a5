#pragma once

// Rational-integer helpers: primality, factoring, small modular arithmetic.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace symsplit {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);

bool is_prime(const mpz_class& n);
bool is_prime(u64 n);

std::vector<u64> primes_up_to(u64 n);

// Full factorization of |n| (n != 0), ascending primes. Trial division and
// Pollard-Brent; gives up with BudgetExceeded when a composite cofactor
// larger than `bound` resists splitting.
std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n,
                                                           const mpz_class& bound);
std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n);

u64 multiplicative_order(u64 a, u64 n);
u64 euler_phi(u64 n);

bool is_cube_free(const mpz_class& m);
// m / (largest cube dividing m), sign kept.
mpz_class cube_free_part(const mpz_class& m);
bool is_perfect_cube(const mpz_class& m);

// Nearest integer to the rational n/d, ties toward zero.
mpz_class round_div(const mpz_class& n, const mpz_class& d);

mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

mpz_class from_string(const std::string& s);

} // namespace symsplit
