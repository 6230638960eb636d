#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vknot_core::generate::random_virtual;
use vknot_core::invariant::Evaluation;
use vknot_core::{Diagram, LaurentPoly, LaurentPoly2};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_diagram(seed: u64, crossings: u32) -> Diagram {
    random_virtual(&mut rng(seed), crossings)
}

/// Every invariant the crate computes, for `n` up to `max_n`.
#[derive(Debug, PartialEq, Eq)]
pub struct Signature {
    pub p: LaurentPoly,
    pub writhes: Vec<i64>,
    pub dwrithes: Vec<i64>,
    pub l: Vec<LaurentPoly2>,
    pub f: Vec<LaurentPoly2>,
}

pub fn signature(d: &Diagram, max_n: i64) -> Signature {
    let e = Evaluation::new(d).unwrap();
    let t = e.table();
    Signature {
        p: e.affine_index_polynomial(),
        writhes: (-max_n..=max_n).filter(|&n| n != 0).map(|n| t.n_writhe(n).unwrap()).collect(),
        dwrithes: (1..=max_n).map(|n| t.n_dwrithe(n).unwrap()).collect(),
        l: (1..=max_n).map(|n| e.l_polynomial(n).unwrap()).collect(),
        f: (1..=max_n).map(|n| e.f_polynomial(n).unwrap()).collect(),
    }
}
