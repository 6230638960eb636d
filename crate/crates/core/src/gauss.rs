//! Signed Gauss codes: the text dialect every diagram is named in.
//!
//! A code is a cyclic sequence of passes `O<id><sign>` / `U<id><sign>`.
//! Each crossing id appears exactly twice, once over and once under, and
//! both passes carry the crossing's sign. Virtual crossings are not
//! recorded; a Gauss code already determines the diagram up to virtual
//! moves.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn swapped(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Over => "over",
            Role::Under => "under",
        })
    }
}

/// Crossing sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl core::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flipped()
    }
}

/// One pass of the traversal through a classical crossing.
///
/// Field order matters: the derived `Ord` (role, then id, then sign) is the
/// order canonical forms are minimized in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PassToken {
    pub role: Role,
    pub crossing: u32,
    pub sign: Sign,
}

impl PassToken {
    pub fn new(role: Role, crossing: u32, sign: Sign) -> Self {
        PassToken { role, crossing, sign }
    }
}

impl fmt::Display for PassToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{r}{}{s}", self.crossing)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("malformed token at index {index}")]
    MalformedToken { index: usize },
    #[error("crossing {crossing} has a second {role} pass at token {index}")]
    DuplicatePass { index: usize, crossing: u32, role: Role },
    #[error("crossing {crossing} at token {index} has no partner pass")]
    UnpairedPass { index: usize, crossing: u32 },
    #[error("crossing {crossing} changes sign at token {index}")]
    SignMismatch { index: usize, crossing: u32 },
}

impl GaussError {
    /// Token position the error refers to.
    pub fn index(&self) -> usize {
        match *self {
            GaussError::MalformedToken { index }
            | GaussError::DuplicatePass { index, .. }
            | GaussError::UnpairedPass { index, .. }
            | GaussError::SignMismatch { index, .. } => index,
        }
    }
}

/// A validated Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RawCode {
    tokens: Vec<PassToken>,
}

impl RawCode {
    /// The empty code (unknot).
    pub fn unknot() -> Self {
        RawCode::default()
    }

    /// Validates the pairing and sign rules.
    pub fn new(tokens: Vec<PassToken>) -> Result<Self, GaussError> {
        validate(&tokens)?;
        Ok(RawCode { tokens })
    }

    pub(crate) fn new_unchecked(tokens: Vec<PassToken>) -> Self {
        debug_assert!(validate(&tokens).is_ok(), "invalid code {tokens:?}");
        RawCode { tokens }
    }

    pub fn parse(text: &str) -> Result<Self, GaussError> {
        let tokens = tokenize(text)?;
        RawCode::new(tokens)
    }

    pub fn tokens(&self) -> &[PassToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.tokens.len() / 2
    }

    /// Cyclic rotation so that the pass at `k` comes first.
    pub fn rotated(&self, k: usize) -> RawCode {
        if self.tokens.is_empty() {
            return self.clone();
        }
        let k = k % self.tokens.len();
        let mut tokens = Vec::with_capacity(self.tokens.len());
        tokens.extend_from_slice(&self.tokens[k..]);
        tokens.extend_from_slice(&self.tokens[..k]);
        RawCode { tokens }
    }

    /// Least code over all rotations, each relabeled by order of first
    /// appearance. No reflection or reversal is applied.
    pub fn canonicalize(&self) -> RawCode {
        let tokens = least_relabeled_rotation(&self.tokens, |p| p.crossing, |p, id| PassToken { crossing: id, ..*p });
        RawCode { tokens }
    }

    pub fn serialize(&self) -> String {
        use alloc::string::ToString;
        self.to_string()
    }
}

impl fmt::Display for RawCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tokens {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for RawCode {
    type Err = GaussError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RawCode::parse(s)
    }
}

pub fn parse(text: &str) -> Result<RawCode, GaussError> {
    RawCode::parse(text)
}

pub fn serialize(code: &RawCode) -> String {
    code.serialize()
}

pub fn canonicalize(code: &RawCode) -> RawCode {
    code.canonicalize()
}

fn tokenize(text: &str) -> Result<Vec<PassToken>, GaussError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        let Some(head) = chars.next() else { break };
        let index = out.len();
        let bad = GaussError::MalformedToken { index };
        let role = match head {
            'O' => Role::Over,
            'U' => Role::Under,
            _ => return Err(bad),
        };
        let mut id: u32 = 0;
        let mut digits = 0;
        while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
            chars.next();
            id = id.checked_mul(10).and_then(|v| v.checked_add(d)).ok_or(bad.clone())?;
            digits += 1;
        }
        if digits == 0 || id == 0 {
            return Err(bad);
        }
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') | Some('\u{2212}') => Sign::Minus,
            _ => return Err(bad),
        };
        out.push(PassToken::new(role, id, sign));
    }
    Ok(out)
}

fn validate(tokens: &[PassToken]) -> Result<(), GaussError> {
    // id -> (role of first pass, sign, seen twice)
    let mut seen: BTreeMap<u32, (usize, Role, Sign, bool)> = BTreeMap::new();
    for (index, t) in tokens.iter().enumerate() {
        if t.crossing == 0 {
            return Err(GaussError::MalformedToken { index });
        }
        match seen.get_mut(&t.crossing) {
            None => {
                seen.insert(t.crossing, (index, t.role, t.sign, false));
            }
            Some((_, role, sign, paired)) => {
                if *paired || *role == t.role {
                    return Err(GaussError::DuplicatePass { index, crossing: t.crossing, role: t.role });
                }
                if *sign != t.sign {
                    return Err(GaussError::SignMismatch { index, crossing: t.crossing });
                }
                *paired = true;
            }
        }
    }
    if let Some((&crossing, &(index, ..))) = seen.iter().filter(|(_, v)| !v.3).min_by_key(|(_, v)| v.0) {
        return Err(GaussError::UnpairedPass { index, crossing });
    }
    Ok(())
}

/// Lexicographically least sequence over all cyclic rotations, each
/// relabeled so crossing ids count up from 1 in order of first appearance.
pub(crate) fn least_relabeled_rotation<T, I, W>(items: &[T], id_of: I, with_id: W) -> Vec<T>
where
    T: Ord + Clone,
    I: Fn(&T) -> u32,
    W: Fn(&T, u32) -> T,
{
    let n = items.len();
    let mut best: Option<Vec<T>> = None;
    let mut labels: BTreeMap<u32, u32> = BTreeMap::new();
    let mut candidate = Vec::with_capacity(n);
    for k in 0..n {
        labels.clear();
        candidate.clear();
        let mut worse = false;
        for i in 0..n {
            let item = &items[(k + i) % n];
            let next = labels.len() as u32 + 1;
            let id = *labels.entry(id_of(item)).or_insert(next);
            let relabeled = with_id(item, id);
            if let Some(b) = &best {
                // prune as soon as the prefix is strictly larger
                if candidate.as_slice() == &b[..i] && relabeled > b[i] {
                    worse = true;
                    break;
                }
            }
            candidate.push(relabeled);
        }
        if worse {
            continue;
        }
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate.clone());
        }
    }
    best.unwrap_or_default()
}
