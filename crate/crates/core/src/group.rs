//! Finite groups given by an exact multiplication rule on element indices.

use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::perm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Construction limits shared by every constructor.
#[derive(Debug, Clone)]
pub struct GroupLimits {
    pub max_order: usize,
    /// Orders up to this value get an exhaustive associativity check.
    pub exhaustive_assoc_max: usize,
    pub assoc_seed: u64,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits { max_order: 5040, exhaustive_assoc_max: 512, assoc_seed: 0x5eed }
    }
}

pub const HARD_ORDER_CAP: usize = 40320;

#[derive(Debug, Clone)]
enum Repr {
    Cyclic,
    Table(Vec<u32>),
    Perm { degree: usize, perms: Vec<u8> },
    Product(Box<FiniteGroup>, Box<FiniteGroup>),
}

/// A finite group on the element indices `0..order`.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    inv: Vec<u32>,
    repr: Repr,
    description: String,
}

fn check_cap(order: usize, limits: &GroupLimits) -> Result<()> {
    let cap = limits.max_order.min(HARD_ORDER_CAP);
    if order > cap {
        return Err(Error::OrderCap { order, cap });
    }
    Ok(())
}

impl FiniteGroup {
    /// `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
        }
        let inv = (0..n).map(|x| ((n - x) % n) as u32).collect();
        Ok(FiniteGroup { order: n, identity: 0, inv, repr: Repr::Cyclic, description: format!("Z_{n}") })
    }

    pub fn symmetric(m: usize) -> Result<Self> {
        Self::symmetric_with(m, &GroupLimits::default())
    }

    /// `S_m` with elements in lexicographic order of one-line notation, so the
    /// identity is element 0.
    pub fn symmetric_with(m: usize, limits: &GroupLimits) -> Result<Self> {
        if !(1..=perm::MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidArgument(format!("symmetric degree {m} outside 1..=8")));
        }
        let order = perm::factorial(m);
        check_cap(order, limits)?;
        let mut perms = Vec::with_capacity(order * m);
        for r in 0..order {
            perms.extend(perm::unrank(m, r));
        }
        let inv = (0..order).map(|r| perm::rank(&perm::inverse(&perms[r * m..(r + 1) * m])) as u32).collect();
        Ok(FiniteGroup { order, identity: 0, inv, repr: Repr::Perm { degree: m, perms }, description: format!("S_{m}") })
    }

    pub fn dihedral(m: usize) -> Result<Self> {
        Self::dihedral_with(m, &GroupLimits::default())
    }

    /// Symmetries of the regular `m`-gon, order `2m`. Elements `0..m` are the
    /// rotations `r^i`, elements `m..2m` are the reflections `s·r^i`.
    pub fn dihedral_with(m: usize, limits: &GroupLimits) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("dihedral group needs m >= 1".into()));
        }
        let order = 2 * m;
        check_cap(order, limits)?;
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let (sa, i) = (a >= m, a % m);
                let (sb, j) = (b >= m, b % m);
                let c = match (sa, sb) {
                    (false, false) => (i + j) % m,
                    (false, true) => m + (j + m - i) % m,
                    (true, false) => m + (i + j) % m,
                    (true, true) => (j + m - i) % m,
                };
                mul[a * order + b] = c as u32;
            }
        }
        let inv = (0..order).map(|a| if a < m { ((m - a) % m) as u32 } else { a as u32 }).collect();
        Ok(FiniteGroup { order, identity: 0, inv, repr: Repr::Table(mul), description: format!("D_{m}") })
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        Self::direct_product_with(g, h, &GroupLimits::default())
    }

    /// `g × h` with the pair `(a, b)` stored at index `a·|h| + b`.
    pub fn direct_product_with(g: &FiniteGroup, h: &FiniteGroup, limits: &GroupLimits) -> Result<Self> {
        let order = g.order.checked_mul(h.order).ok_or(Error::OrderCap { order: usize::MAX, cap: limits.max_order })?;
        check_cap(order, limits)?;
        let inv = (0..order).map(|x| (g.inv(x / h.order) * h.order + h.inv(x % h.order)) as u32).collect();
        let identity = g.identity * h.order + h.identity;
        Ok(FiniteGroup {
            order,
            identity,
            inv,
            description: format!("{} x {}", g.description, h.description),
            repr: Repr::Product(Box::new(g.clone()), Box::new(h.clone())),
        })
    }

    /// Elementary abelian group `Z_2^d`, as a `d`-fold direct product.
    pub fn elementary_abelian_2(d: usize) -> Result<Self> {
        let z2 = FiniteGroup::cyclic(2)?;
        let mut g = FiniteGroup::cyclic(1)?;
        for i in 0..d {
            g = if i == 0 { z2.clone() } else { FiniteGroup::direct_product(&g, &z2)? };
        }
        Ok(g)
    }

    pub fn from_cayley_table(text: &str) -> Result<Self> {
        Self::from_cayley_table_with(text, &GroupLimits::default())
    }

    /// Parses and validates a Cayley table: first line `n`, then `n` rows of
    /// `n` whitespace-separated entries. The identity may be any element.
    pub fn from_cayley_table_with(text: &str, limits: &GroupLimits) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (first_no, first) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: first_no + 1, message: format!("expected group order, found {first:?}") })?;
        if n == 0 {
            return Err(Error::Parse { line: first_no + 1, message: "group order must be positive".into() });
        }
        check_cap(n, limits)?;
        let mut mul = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (no, line) in lines {
            if rows == n {
                return Err(Error::Parse { line: no + 1, message: format!("more than {n} table rows") });
            }
            let before = mul.len();
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse { line: no + 1, message: format!("bad entry {tok:?}") })?;
                if v >= n {
                    return Err(Error::Parse { line: no + 1, message: format!("entry {v} out of range 0..{n}") });
                }
                mul.push(v as u32);
            }
            if mul.len() - before != n {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("expected {n} entries, found {}", mul.len() - before),
                });
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::Parse { line: rows + 2, message: format!("expected {n} table rows, found {rows}") });
        }
        Self::from_table(n, mul, format!("cayley-table:{n}"), limits)
    }

    /// Validates a row-major multiplication table.
    pub fn from_table(n: usize, mul: Vec<u32>, description: String, limits: &GroupLimits) -> Result<Self> {
        assert_eq!(mul.len(), n * n);
        check_latin(n, |a, b| mul[a * n + b] as usize)?;
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n).find(|&y| at(x, y) == identity).ok_or(Error::MissingInverse { element: x })?;
            if at(y, x) != identity {
                return Err(Error::MissingInverse { element: x });
            }
            inv[x] = y as u32;
        }
        check_associative(n, at, limits)?;
        Ok(FiniteGroup { order: n, identity, inv, repr: Repr::Table(mul), description })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Cyclic => {
                let s = a + b;
                if s >= self.order { s - self.order } else { s }
            }
            Repr::Table(t) => t[a * self.order + b] as usize,
            Repr::Perm { degree, perms } => {
                let m = *degree;
                let f = &perms[a * m..(a + 1) * m];
                let g = &perms[b * m..(b + 1) * m];
                let mut buf = [0u8; perm::MAX_DEGREE];
                for i in 0..m {
                    buf[i] = f[g[i] as usize];
                }
                perm::rank(&buf[..m])
            }
            Repr::Product(g, h) => {
                let k = h.order;
                g.mul(a / k, b / k) * k + h.mul(a % k, b % k)
            }
        }
    }

    /// `x · a · x⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    /// One-line notation of element `x` when the group is a symmetric group.
    pub fn permutation(&self, x: usize) -> Option<&[u8]> {
        match &self.repr {
            Repr::Perm { degree, perms } => Some(&perms[x * degree..(x + 1) * degree]),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Perm { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    /// Index of a permutation given in 0-based one-line notation.
    pub fn perm_index(&self, p: &[u8]) -> Option<usize> {
        match self.degree() {
            Some(m) if p.len() == m => Some(perm::rank(p)),
            _ => None,
        }
    }

    /// Human-readable label: one-line notation for permutations, index otherwise.
    pub fn element_label(&self, x: usize) -> String {
        match self.permutation(x) {
            Some(p) => perm::one_line(p),
            None => x.to_string(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Subset {
        Subset::from_indices(self.order, (0..self.order).filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))))
            .expect("indices in range")
    }

    /// Row-major multiplication table. Allocates `order²` entries.
    pub fn table(&self) -> Vec<u32> {
        let n = self.order;
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.mul(a, b) as u32);
            }
        }
        t
    }

    /// Serializes the group in the Cayley-table text format.
    pub fn to_cayley_text(&self) -> String {
        let n = self.order;
        let mut out = format!("{n}\n");
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Re-checks all group axioms against the multiplication rule.
    pub fn validate(&self, limits: &GroupLimits) -> Result<()> {
        let n = self.order;
        check_latin(n, |a, b| self.mul(a, b))?;
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::NoIdentity);
            }
            let y = self.inv(x);
            if self.mul(x, y) != self.identity || self.mul(y, x) != self.identity {
                return Err(Error::MissingInverse { element: x });
            }
        }
        check_associative(n, |a, b| self.mul(a, b), limits)
    }

    /// Checks that `s` is a subset of this group's element range.
    pub fn check_subset(&self, s: &Subset) -> Result<()> {
        if s.universe() != self.order {
            return Err(Error::UniverseMismatch { expected: self.order, found: s.universe() });
        }
        Ok(())
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.order)
    }

    pub fn subset<I: IntoIterator<Item = usize>>(&self, items: I) -> Result<Subset> {
        Subset::from_indices(self.order, items)
            .ok_or_else(|| Error::InvalidArgument(format!("element index outside 0..{}", self.order)))
    }

    /// `x·A`.
    pub fn left_translate(&self, x: usize, a: &Subset) -> Subset {
        let mut out = Subset::empty(self.order);
        for y in a {
            out.insert(self.mul(x, y));
        }
        out
    }

    /// `A·x`.
    pub fn right_translate(&self, a: &Subset, x: usize) -> Subset {
        let mut out = Subset::empty(self.order);
        for y in a {
            out.insert(self.mul(y, x));
        }
        out
    }

    /// `{a⁻¹ : a ∈ A}`.
    pub fn inverse_set(&self, a: &Subset) -> Subset {
        let mut out = Subset::empty(self.order);
        for y in a {
            out.insert(self.inv(y));
        }
        out
    }
}

fn check_latin(n: usize, at: impl Fn(usize, usize) -> usize) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for r in 0..n {
        for c in 0..n {
            let v = at(r, c);
            if seen[v] == r {
                return Err(Error::NotLatinSquare { axis: "row", index: r, value: v });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for r in 0..n {
            let v = at(r, c);
            if seen[v] == c {
                return Err(Error::NotLatinSquare { axis: "column", index: c, value: v });
            }
            seen[v] = c;
        }
    }
    Ok(())
}

fn check_associative(n: usize, at: impl Fn(usize, usize) -> usize, limits: &GroupLimits) -> Result<()> {
    let test = |a, b, c| {
        if at(at(a, b), c) != at(a, at(b, c)) {
            Err(Error::NotAssociative { a, b, c })
        } else {
            Ok(())
        }
    };
    if n <= limits.exhaustive_assoc_max {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    test(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(limits.assoc_seed);
        for _ in 0..10 * n * n {
            test(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
        }
    }
    Ok(())
}
