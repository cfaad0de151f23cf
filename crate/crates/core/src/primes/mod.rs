//! Prime utilities: sieving, primality, prime-counting bounds, and exact
//! reciprocal sums of distinct primes.

mod bounds;
mod chains;
mod sieve;

pub use bounds::{
    check_rs_inequality, check_rs_inequality_with, ln_enclosure, verify_interval_lemma, verify_interval_lemma_with,
    IntervalLemmaReport, IntervalSample, LnEnclosure, RsCheck, RS_LOWER_VALIDITY,
};
pub use chains::{delta, delta_upper_bound, straddle_chain, DeltaWitness, PrimeChain};
pub use sieve::{
    is_prime, is_prime_u64, next_prime, prime_pi, primes_in_open_interval, sieve, PrimeTable, SieveBudget,
};
