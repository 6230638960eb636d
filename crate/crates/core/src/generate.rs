//! Seeded generators for random diagrams.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::Diagram;
use crate::gauss::{PassToken, Role, Sign};

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Uniformly shuffled Gauss code with `crossings` crossings of random sign.
/// Almost never planar.
pub fn random_virtual<R: Rng + ?Sized>(rng: &mut R, crossings: u32) -> Diagram {
    let mut tokens = Vec::with_capacity(2 * crossings as usize);
    for id in 1..=crossings {
        let s = random_sign(rng);
        tokens.push(PassToken::new(Role::Over, id, s));
        tokens.push(PassToken::new(Role::Under, id, s));
    }
    tokens.shuffle(rng);
    Diagram::from_tokens(tokens)
}

/// One braid generator: strands `i` and `i + 1` (0-based) cross. For
/// `Sign::Plus` the strand coming from position `i` passes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidLetter {
    pub position: usize,
    pub sign: Sign,
}

/// Gauss code of the closure of a braid on `strands` strands, or `None`
/// when the closure has more than one component.
pub fn braid_closure(strands: usize, word: &[BraidLetter]) -> Option<Diagram> {
    if strands == 0 || word.iter().any(|l| l.position + 1 >= strands) {
        return None;
    }
    let mut tokens = Vec::with_capacity(2 * word.len());
    let mut pos = 0;
    let mut laps = 0;
    loop {
        for (k, letter) in word.iter().enumerate() {
            let id = k as u32 + 1;
            let i = letter.position;
            if pos == i {
                let role = if letter.sign == Sign::Plus { Role::Over } else { Role::Under };
                tokens.push(PassToken::new(role, id, letter.sign));
                pos = i + 1;
            } else if pos == i + 1 {
                let role = if letter.sign == Sign::Plus { Role::Under } else { Role::Over };
                tokens.push(PassToken::new(role, id, letter.sign));
                pos = i;
            }
        }
        laps += 1;
        if pos == 0 {
            break;
        }
    }
    (laps == strands).then(|| Diagram::from_tokens(tokens))
}

/// Random classical knot diagram: the closure of a random braid on 2 to 4
/// strands with at most `max_crossings` letters.
pub fn random_classical<R: Rng + ?Sized>(rng: &mut R, max_crossings: usize) -> Diagram {
    assert!(max_crossings >= 1);
    loop {
        let strands = rng.gen_range(2..=4usize.min(max_crossings + 1));
        let len = rng.gen_range(strands - 1..=max_crossings);
        let word: Vec<BraidLetter> =
            (0..len).map(|_| BraidLetter { position: rng.gen_range(0..strands - 1), sign: random_sign(rng) }).collect();
        if let Some(d) = braid_closure(strands, &word) {
            return d;
        }
    }
}
