//! The nondeterministic family whose one-state equivalents need
//! exponentially many colours, and the exact one-state colour minimiser.
//!
//! A one-state generalised Büchi automaton is a monotone CNF over the
//! alphabet: colour `c` names the clause "some letter carrying `c` recurs".
//! For a language determined by the set of letters occurring infinitely
//! often, the minimal number of colours is therefore the number of prime
//! implicates of the associated monotone function: every positive CNF must
//! contain each prime implicate as one of its clauses, and the prime
//! implicates alone already define the function.

use crate::automaton::{Automaton, AutomatonBuilder};
use crate::colours::{Acceptance, ColourSet};
use crate::lasso::{lasso_accepts, Lasso};
use crate::{Alphabet, Error, Result};

/// The family member `A_n`: states `q_init, q_1..q_n` over letters
/// `1..2n`; the initial state moves to every `q_j` on every letter, and
/// `q_i` loops on its own pair `{2i-1, 2i}` with the two colours and
/// silently on every other letter. `A_n` accepts the words in which both
/// letters of some pair occur infinitely often, with `n + 1` states and
/// two colours.
pub fn exp_family(n: usize) -> Result<Automaton> {
    if n == 0 {
        return Err(Error::Contract("the family starts at n = 1".into()));
    }
    if n > 8 {
        return Err(Error::Contract("family members beyond n = 8 are not materialisable".into()));
    }
    let alphabet = Alphabet::new((1..=2 * n).map(|l| l.to_string()))?;
    let mut b = AutomatonBuilder::new(alphabet, Acceptance::buchi(2), n + 1);
    for letter in 0..2 * n {
        for j in 1..=n {
            b = b.transition(0, letter, j, ColourSet::EMPTY);
        }
    }
    for i in 1..=n {
        for letter in 0..2 * n {
            let colours = if letter == 2 * i - 2 {
                ColourSet::singleton(0)
            } else if letter == 2 * i - 1 {
                ColourSet::singleton(1)
            } else {
                ColourSet::EMPTY
            };
            b = b.transition(i, letter, i, colours);
        }
    }
    b.build()
}

/// A one-state generalised Büchi automaton from a positive CNF: clause `c`
/// becomes colour `c`, carried by the loops of exactly its letters.
pub fn one_state_cnf_automaton(alphabet: Alphabet, clauses: &[Vec<usize>]) -> Result<Automaton> {
    let k = clauses.len();
    let mut b = AutomatonBuilder::new(alphabet.clone(), Acceptance::buchi(k), 1);
    for letter in 0..alphabet.len() {
        let colours =
            ColourSet::from_iter((0..k).filter(|&c| clauses[c].contains(&letter)));
        b = b.transition(0, letter, 0, colours);
    }
    b.build()
}

/// Evaluates the automaton's inf-set predicate on every non-empty letter
/// set via lasso membership.
fn inf_set_table(aut: &Automaton) -> Result<Vec<bool>> {
    let sigma = aut.alphabet().len();
    let mut table = vec![false; 1 << sigma];
    for code in 1usize..(1 << sigma) {
        let cycle: Vec<usize> = (0..sigma).filter(|&l| code & (1 << l) != 0).collect();
        let lasso = Lasso::new(Vec::new(), cycle)?;
        table[code] = lasso_accepts(aut, &lasso)?;
    }
    Ok(table)
}

/// Exact minimal number of colours of a one-state generalised Büchi
/// automaton for `L(aut)`, assuming the language is determined by the set
/// of letters occurring infinitely often (which holds whenever a one-state
/// equivalent exists at all). The count is the number of prime implicates
/// of the inf-set predicate; when the predicate is not expressible by a
/// monotone CNF — i.e. no one-state automaton of any colour count exists —
/// the search reports infeasibility.
pub fn exact_colour_min_one_state(aut: &Automaton) -> Result<usize> {
    let sigma = aut.alphabet().len();
    if sigma > 16 {
        return Err(Error::BudgetExceeded {
            explored: 0,
            budget: 1 << 16,
        });
    }
    let f = inf_set_table(aut)?;
    let full = (1usize << sigma) - 1;
    // Accept-everything needs no clause at all: the empty set is not a
    // valid infinity set, so a CNF only has to match on non-empty sets.
    if (1..=full).all(|s| f[s]) {
        return Ok(0);
    }
    // C is an implicate iff f is false on the complement of C (only
    // non-empty complements count as evaluation points). The empty clause
    // is the lone implicate of the empty language.
    let implicate = |c: usize| -> bool {
        let rest = full & !c;
        rest == 0 || !f[rest]
    };
    let mut primes: Vec<usize> = Vec::new();
    for c in 0usize..=full {
        if !implicate(c) {
            continue;
        }
        let minimal = (0..sigma)
            .filter(|&l| c & (1 << l) != 0)
            .all(|l| !implicate(c & !(1 << l)));
        if minimal {
            primes.push(c);
        }
    }
    // Verify the prime CNF realises the predicate; failure means no
    // one-state automaton over any number of colours is equivalent.
    for s in 1usize..=full {
        let cnf_value = primes.iter().all(|&p| p & s != 0);
        if cnf_value != f[s] {
            return Err(Error::Contract(
                "no one-state automaton recognises this language at any colour count".into(),
            ));
        }
    }
    Ok(primes.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        assert_eq!(exp_family(1).unwrap().states(), 2);
        assert_eq!(exp_family(3).unwrap().states(), 4);
        assert_eq!(exp_family(2).unwrap().acceptance().colours, 2);
    }

    #[test]
    fn family_language_is_some_pair_infinitely_often() {
        for n in 1..=3usize {
            let a = exp_family(n).unwrap();
            let mut rng = crate::random::rng(31);
            for _ in 0..200 {
                let l = crate::random::lasso(&mut rng, 2 * n, 2, 4);
                let expected = (1..=n).any(|i| {
                    l.cycle.contains(&(2 * i - 2)) && l.cycle.contains(&(2 * i - 1))
                });
                assert_eq!(lasso_accepts(&a, &l).unwrap(), expected);
            }
        }
    }

    #[test]
    fn colour_minimum_is_exponential() {
        assert_eq!(exact_colour_min_one_state(&exp_family(1).unwrap()).unwrap(), 2);
        assert_eq!(exact_colour_min_one_state(&exp_family(2).unwrap()).unwrap(), 4);
    }

    #[test]
    fn duplicate_letters_collapse_clauses() {
        // "a or b recurs" needs a single clause even with three letters.
        let alphabet = Alphabet::of_chars("abc").unwrap();
        let a = one_state_cnf_automaton(alphabet, &[vec![0, 1]]).unwrap();
        assert_eq!(exact_colour_min_one_state(&a).unwrap(), 1);
    }

    #[test]
    fn prime_count_matches_exhaustive_clause_search() {
        use rand::Rng;
        let mut rng = crate::random::rng(41);
        for _ in 0..25 {
            let sigma = rng.gen_range(2..5usize);
            let full = (1usize << sigma) - 1;
            // Random monotone predicate from random generator sets.
            let seeds: Vec<usize> = (0..rng.gen_range(1..4))
                .map(|_| rng.gen_range(1..=full))
                .collect();
            let f: Vec<bool> = (0..=full)
                .map(|s| seeds.iter().any(|&g| g & s == g))
                .collect();
            if !f[full] {
                continue; // constant-false needs an empty clause; skip
            }
            let clauses_from = |code: usize| -> Vec<Vec<usize>> {
                // Interpret code as a subset of the non-empty letter sets.
                (1..=full)
                    .filter(|&c| code & (1 << (c - 1)) != 0)
                    .map(|c| (0..sigma).filter(|&l| c & (1 << l) != 0).collect())
                    .collect()
            };
            // Build the automaton from the full prime CNF and minimise.
            let mut primes = Vec::new();
            for c in 1..=full {
                let implies = |c: usize| {
                    let rest = full & !c;
                    rest == 0 || !f[rest]
                };
                if implies(c)
                    && (0..sigma)
                        .filter(|&l| c & (1 << l) != 0)
                        .all(|l| !implies(c & !(1 << l)))
                {
                    primes.push((0..sigma).filter(|&l| c & (1 << l) != 0).collect::<Vec<_>>());
                }
            }
            let names: Vec<String> = (0..sigma).map(|l| l.to_string()).collect();
            let alphabet = Alphabet::new(names).unwrap();
            let aut = one_state_cnf_automaton(alphabet, &primes).unwrap();
            let fast = exact_colour_min_one_state(&aut).unwrap();

            // Exhaustive search over clause sets, smallest first: a clause
            // set is a bitmask over the 2^sigma - 1 candidate clauses.
            let mut brute = None;
            'search: for k in 0..=primes.len() {
                for code in 0usize..(1 << full) {
                    if code.count_ones() as usize != k {
                        continue;
                    }
                    let clauses = clauses_from(code);
                    let ok = (1..=full).all(|s| {
                        let value =
                            clauses.iter().all(|cl| cl.iter().any(|&l| s & (1 << l) != 0));
                        value == f[s]
                    });
                    if ok {
                        brute = Some(k);
                        break 'search;
                    }
                }
            }
            assert_eq!(Some(fast), brute, "sigma={sigma} primes={primes:?}");
        }
    }
}
