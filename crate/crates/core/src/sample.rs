//! Seeded random words and quaternions for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Presentation;
use crate::quat::Quaternion;
use crate::word::{Letter, Side, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform letters, not necessarily reduced.
pub fn random_word<R: Rng>(pres: &Presentation, len: usize, rng: &mut R) -> Word {
    let alphabet = pres.letters();
    let letters = (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect();
    pres.word(letters)
}

/// Freely reduced word of exactly `len` letters, restricted to one side if
/// requested.
pub fn random_reduced_word<R: Rng>(
    pres: &Presentation,
    side: Option<Side>,
    len: usize,
    rng: &mut R,
) -> Word {
    let alphabet: Vec<Letter> = match side {
        Some(s) => pres.letters_of(s),
        None => pres.letters(),
    };
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = alphabet[rng.gen_range(0..alphabet.len())];
        if letters.last() != Some(&l.inv()) {
            letters.push(l);
        }
    }
    pres.word(letters)
}

/// Integer quaternion with coordinates in `-bound..=bound`.
pub fn random_quaternion<R: Rng>(bound: i64, rng: &mut R) -> Quaternion {
    let mut c = || rng.gen_range(-bound..=bound);
    Quaternion::from_ints(c(), c(), c(), c())
}

pub fn random_nonzero_quaternion<R: Rng>(bound: i64, rng: &mut R) -> Quaternion {
    loop {
        let x = random_quaternion(bound, rng);
        if !x.is_zero() {
            return x;
        }
    }
}
