use std::collections::BTreeSet;
use std::fmt;

/// Multiset of `(e, f)` pairs describing `p Z_K`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    pairs: Vec<(u64, u64)>,
}

impl SplittingType {
    pub fn new(mut pairs: Vec<(u64, u64)>) -> Self {
        assert!(pairs.iter().all(|&(e, f)| e >= 1 && f >= 1));
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// `sum e*f`, the degree of the algebra.
    pub fn degree(&self) -> u64 {
        self.pairs.iter().map(|(e, f)| e * f).sum()
    }

    /// Number of primes with residue degree `f`.
    pub fn count_with_f(&self, f: u64) -> u64 {
        self.pairs.iter().filter(|p| p.1 == f).count() as u64
    }

    pub fn residue_degrees(&self) -> BTreeSet<u64> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn is_unramified(&self) -> bool {
        self.pairs.iter().all(|p| p.0 == 1)
    }

    pub fn ramification_indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    /// `sum (e-1) f`, the tame different exponent.
    pub fn tame_different(&self) -> u64 {
        self.pairs.iter().map(|(e, f)| (e - 1) * f).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(e, g)| format!("({e},{g})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Primes above `p` known only up to a block: each one has ramification a
/// multiple of `e` and residue degree a multiple of `f`, with the refined
/// parts `(e', f')` satisfying `sum e' f' = weight`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBlock {
    pub e: u64,
    pub f: u64,
    pub weight: u64,
}

impl PartialBlock {
    /// Every multiset of `(e * e', f * f')` compatible with the block.
    pub fn completions(&self) -> Vec<Vec<(u64, u64)>> {
        let mut choices: Vec<(u64, u64)> = Vec::new();
        for s in 1..=self.weight {
            for e2 in 1..=s {
                if s % e2 == 0 {
                    choices.push((e2, s / e2));
                }
            }
        }
        let mut out = Vec::new();
        fill(&choices, 0, self.weight, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|v| v.into_iter().map(|(a, b)| (a * self.e, b * self.f)).collect())
            .collect()
    }
}

fn fill(
    choices: &[(u64, u64)],
    from: usize,
    left: u64,
    cur: &mut Vec<(u64, u64)>,
    out: &mut Vec<Vec<(u64, u64)>>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for (i, &(e, f)) in choices.iter().enumerate().skip(from) {
        if e * f <= left {
            cur.push((e, f));
            fill(choices, i, left - e * f, cur, out);
            cur.pop();
        }
    }
}

/// Splitting data from the engine: either complete or with partial blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Complete(SplittingType),
    Partial {
        known: Vec<(u64, u64)>,
        blocks: Vec<PartialBlock>,
    },
}

impl Shape {
    pub fn from_parts(known: Vec<(u64, u64)>, blocks: Vec<PartialBlock>) -> Self {
        if blocks.is_empty() {
            Shape::Complete(SplittingType::new(known))
        } else {
            let mut known = known;
            known.sort_unstable();
            let mut blocks = blocks;
            blocks.sort();
            Shape::Partial { known, blocks }
        }
    }

    pub fn complete(&self) -> Option<&SplittingType> {
        match self {
            Shape::Complete(s) => Some(s),
            Shape::Partial { .. } => None,
        }
    }

    /// All splitting types consistent with the shape, deduplicated.
    pub fn candidates(&self) -> Vec<SplittingType> {
        match self {
            Shape::Complete(s) => vec![s.clone()],
            Shape::Partial { known, blocks } => {
                let mut acc: Vec<Vec<(u64, u64)>> = vec![known.clone()];
                for b in blocks {
                    let comps = b.completions();
                    acc = acc
                        .iter()
                        .flat_map(|base| {
                            comps.iter().map(move |c| {
                                let mut v = base.clone();
                                v.extend(c.iter().copied());
                                v
                            })
                        })
                        .collect();
                }
                let set: BTreeSet<SplittingType> = acc.into_iter().map(SplittingType::new).collect();
                set.into_iter().collect()
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Complete(s) => write!(f, "{s}"),
            Shape::Partial { known, blocks } => {
                let mut parts: Vec<String> = known.iter().map(|(e, g)| format!("({e},{g})")).collect();
                parts.extend(blocks.iter().map(|b| format!("[{}x({},{})]", b.weight, b.e, b.f)));
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}
