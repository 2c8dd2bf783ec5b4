use std::cmp::Ordering;
use std::fmt;

/// A power product `x_{i1}^{e1} * x_{i2}^{e2} * ...` over 1-based variables.
///
/// Stored sparsely as `(variable, exponent)` pairs sorted by variable with no
/// zero exponents, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: u32) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: u32, exp: u32) -> Self {
        assert!(index >= 1, "variables are 1-based");
        if exp == 0 {
            Self::one()
        } else {
            Self { exps: vec![(index, exp)] }
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order;
    /// repeated variables multiply.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (v, e) in pairs {
            out = out.mul(&Self::var_pow(v, e));
        }
        out
    }

    /// Dense exponent vector `[e1, e2, ...]` (index 0 is x1).
    pub fn from_dense(exps: &[u32]) -> Self {
        Self {
            exps: exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u32 + 1, e))
                .collect(),
        }
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.exps
            .binary_search_by_key(&index, |&(v, _)| v)
            .map(|pos| self.exps[pos].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// Largest variable index present, 0 for the constant monomial.
    pub fn max_var(&self) -> u32 {
        self.exps.last().map_or(0, |&(v, _)| v)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a.1.checked_add(b.1).expect("exponent overflow");
                    exps.push((a.0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Self { exps }
    }

    /// Divides out `x_index^exp`; `None` when the exponent is too small.
    pub fn div_var(&self, index: u32, exp: u32) -> Option<Self> {
        let current = self.exponent(index);
        if current < exp {
            return None;
        }
        Some(self.with_exponent(index, current - exp))
    }

    pub fn with_exponent(&self, index: u32, exp: u32) -> Self {
        let mut exps: Vec<(u32, u32)> = self.exps.iter().copied().filter(|&(v, _)| v != index).collect();
        if exp > 0 {
            let pos = exps.partition_point(|&(v, _)| v < index);
            exps.insert(pos, (index, exp));
        }
        Self { exps }
    }

    /// Formal `d/dx_index`: the integer factor and the lowered monomial.
    pub fn derivative(&self, index: u32) -> Option<(u32, Self)> {
        let e = self.exponent(index);
        (e > 0).then(|| (e, self.with_exponent(index, e - 1)))
    }

    /// Per-variable exponent parities, used to split linear systems into
    /// invariant blocks.
    pub fn parity_class(&self) -> Vec<u32> {
        self.exps.iter().filter(|&&(_, e)| e % 2 == 1).map(|&(v, _)| v).collect()
    }

    /// Whether every exponent is even.
    pub fn is_even(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// Splits off the power of the largest variable: `(x_k^e, rest)`.
    pub fn split_last(&self) -> Option<((u32, u32), Self)> {
        let (&last, rest) = self.exps.split_last()?;
        Some((last, Self { exps: rest.to_vec() }))
    }
}

/// Graded lexicographic order: total degree first, then the exponent of x1,
/// then x2, and so on (x1 > x2 > ...).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.exps.get(i), other.exps.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        // self has a smaller variable the other lacks
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of total degree exactly `degree` in `x1..=x_nvars`, in
/// descending graded-lex order.
pub fn monomials_of_degree(nvars: u32, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars as usize];
    fill(&mut exps, 0, degree, &mut out);
    out
}

fn fill(exps: &mut [u32], pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial::from_dense(exps));
        exps[pos] = 0;
        return;
    }
    if exps.is_empty() {
        if left == 0 {
            out.push(Monomial::one());
        }
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

/// All monomials of total degree at most `degree` in `x1..=x_nvars`,
/// ascending by degree.
pub fn monomials_up_to(nvars: u32, degree: u32) -> Vec<Monomial> {
    (0..=degree).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}
