//! Finite abelian groups given by Cayley tables.
//!
//! Elements are indices `0..order`. A carrier built from cyclic factors
//! `[n_1, ..., n_k]` orders its elements in mixed radix with the first
//! coordinate most significant, so `[2, 2]` lists `(0,0), (0,1), (1,0), (1,1)`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{LcrError, Result};

/// An element of a carrier, as an index into its tables.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteCarrier {
    order: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    factors: Option<Vec<usize>>,
    coords: Option<Vec<Vec<usize>>>,
}

impl FiniteCarrier {
    /// Direct product of cyclic groups `Z/n_1 ⊕ ... ⊕ Z/n_k` with coordinates.
    pub fn cyclic(factors: &[usize]) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n == 0) {
            return Err(LcrError::InvalidFactor(bad));
        }
        let order: usize = factors.iter().product();
        let coords: Vec<Vec<usize>> = (0..order).map(|i| decode(i, factors)).collect();
        let mut add = Vec::with_capacity(order * order);
        for a in &coords {
            for b in &coords {
                let sum: Vec<usize> = a
                    .iter()
                    .zip(b)
                    .zip(factors)
                    .map(|((x, y), n)| (x + y) % n)
                    .collect();
                add.push(encode(&sum, factors));
            }
        }
        let neg = coords
            .iter()
            .map(|a| {
                let inv: Vec<usize> = a.iter().zip(factors).map(|(x, n)| (n - x) % n).collect();
                encode(&inv, factors)
            })
            .collect();
        Ok(FiniteCarrier {
            order,
            add,
            neg,
            zero: 0,
            factors: Some(factors.to_vec()),
            coords: Some(coords),
        })
    }

    /// A carrier from a raw `order × order` addition table (row-major).
    /// The group axioms are checked exhaustively.
    pub fn from_add_table(order: usize, add: Vec<Elem>) -> Result<Self> {
        if order == 0 {
            return Err(LcrError::Structural("carrier must be nonempty".into()));
        }
        if add.len() != order * order {
            return Err(LcrError::Structural(format!(
                "addition table has {} entries, expected {}",
                add.len(),
                order * order
            )));
        }
        if let Some(&bad) = add.iter().find(|&&x| x >= order) {
            return Err(LcrError::OutOfRange(bad, order));
        }
        let at = |a: usize, b: usize| add[a * order + b];
        let zero = (0..order)
            .find(|&z| (0..order).all(|x| at(z, x) == x))
            .ok_or_else(|| LcrError::Structural("addition has no identity".into()))?;
        let mut neg = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| at(x, y) == zero)
                .ok_or_else(|| LcrError::Structural(format!("element {x} has no additive inverse")))?;
            neg.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                if at(a, b) != at(b, a) {
                    return Err(LcrError::Structural(format!("addition is not commutative at ({a},{b})")));
                }
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(LcrError::Structural(format!(
                            "addition is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteCarrier { order, add, neg, zero, factors: None, coords: None })
    }

    /// Carrier of a subgroup or quotient given by an explicit table; coordinates dropped.
    pub(crate) fn from_parts_unchecked(order: usize, add: Vec<Elem>, neg: Vec<Elem>, zero: Elem) -> Self {
        FiniteCarrier { order, add, neg, zero, factors: None, coords: None }
    }

    /// `A ⊕ B` with `(a, b)` at index `a·|B| + b`. Coordinates are
    /// concatenated when both sides have them.
    pub fn direct_sum(a: &FiniteCarrier, b: &FiniteCarrier) -> FiniteCarrier {
        if let (Some(fa), Some(fb)) = (a.factors(), b.factors()) {
            let factors: Vec<usize> = fa.iter().chain(fb).copied().collect();
            return FiniteCarrier::cyclic(&factors).expect("factors of existing carriers are positive");
        }
        let (m, k) = (a.order(), b.order());
        let n = m * k;
        let pair = |x: usize| (x / k, x % k);
        let mut add = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let ((xa, xb), (ya, yb)) = (pair(x), pair(y));
                add.push(a.add(xa, ya) * k + b.add(xb, yb));
            }
        }
        let neg = (0..n).map(|x| a.neg(x / k) * k + b.neg(x % k)).collect();
        FiniteCarrier::from_parts_unchecked(n, add, neg, a.zero() * k + b.zero())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn factors(&self) -> Option<&[usize]> {
        self.factors.as_deref()
    }

    pub fn coords(&self, x: Elem) -> Option<&[usize]> {
        self.coords.as_ref().map(|c| c[x].as_slice())
    }

    pub fn has_coords(&self) -> bool {
        self.coords.is_some()
    }

    /// Look up an element by its coordinate tuple.
    pub fn from_coords(&self, coords: &[usize]) -> Option<Elem> {
        let factors = self.factors.as_ref()?;
        if coords.len() != factors.len() || coords.iter().zip(factors).any(|(c, n)| c >= n) {
            return None;
        }
        Some(encode(coords, factors))
    }

    /// Canonical textual rendering: `(a,h)` for coordinates, bare index otherwise.
    /// A single coordinate is rendered bare.
    pub fn render(&self, x: Elem) -> String {
        match self.coords(x) {
            Some([c]) => c.to_string(),
            Some(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(","))
            }
            None => x.to_string(),
        }
    }

    pub fn check(&self, x: Elem) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(LcrError::OutOfRange(x, self.order))
        }
    }

    /// `k·x` for a nonnegative integer `k`.
    pub fn multiple(&self, k: usize, x: Elem) -> Elem {
        (0..k).fold(self.zero, |acc, _| self.add(acc, x))
    }

    pub fn additive_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[Elem]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[self.zero] = true;
        let mut queue = VecDeque::from([self.zero]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// True iff `mask` is a subgroup.
    pub fn is_subgroup(&self, mask: &[bool]) -> bool {
        if !mask[self.zero] {
            return false;
        }
        let members: Vec<Elem> = self.elements().filter(|&x| mask[x]).collect();
        members.iter().all(|&a| mask[self.neg(a)] && members.iter().all(|&b| mask[self.add(a, b)]))
    }

    /// Every subgroup, as sorted member lists in canonical order (by size, then lexicographic).
    ///
    /// Breadth-first over joins `<S, g>`: every subgroup is reached from `{0}`
    /// by adjoining its elements one at a time.
    pub fn subgroups(&self) -> Vec<Vec<Elem>> {
        let trivial = vec![self.zero];
        let mut seen = std::collections::BTreeSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        while let Some(sub) = queue.pop_front() {
            let mask = members_mask(self.order, &sub);
            for g in self.elements().filter(|&g| !mask[g]) {
                let mut gens = sub.clone();
                gens.push(g);
                let joined = mask_members(&self.span(&gens));
                if seen.insert(joined.clone()) {
                    queue.push_back(joined);
                }
            }
        }
        let mut all: Vec<Vec<Elem>> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// A small generating set, chosen greedily by largest additive order.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut by_order: Vec<Elem> = self.elements().collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.additive_order(x)), x));
        let mut gens = Vec::new();
        let mut mask = self.span(&gens);
        for x in by_order {
            if !mask[x] {
                gens.push(x);
                mask = self.span(&gens);
            }
        }
        gens
    }

    /// Extends `gens[i] ↦ images[i]` additively into `target` over the subgroup
    /// spanned by `gens`. Returns `None` if the assignment is not consistent
    /// with any additive map. Elements outside the span map to `None`.
    pub fn extend_additive(
        &self,
        gens: &[Elem],
        images: &[Elem],
        target: &FiniteCarrier,
    ) -> Option<Vec<Option<Elem>>> {
        debug_assert_eq!(gens.len(), images.len());
        let mut map = vec![None; self.order];
        map[self.zero] = Some(target.zero);
        let mut queue = VecDeque::from([self.zero]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x].expect("queued elements are mapped");
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.add(x, g);
                let fy = target.add(fx, img);
                match map[y] {
                    Some(existing) if existing != fy => return None,
                    Some(_) => {}
                    None => {
                        map[y] = Some(fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Some(map)
    }
}

pub(crate) fn decode(mut index: usize, factors: &[usize]) -> Vec<usize> {
    let mut out = vec![0; factors.len()];
    for (slot, &n) in out.iter_mut().zip(factors).rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

pub(crate) fn encode(coords: &[usize], factors: &[usize]) -> usize {
    coords.iter().zip(factors).fold(0, |acc, (c, n)| acc * n + c)
}

pub(crate) fn members_mask(order: usize, members: &[Elem]) -> Vec<bool> {
    let mut mask = vec![false; order];
    for &m in members {
        mask[m] = true;
    }
    mask
}

pub(crate) fn mask_members(mask: &[bool]) -> Vec<Elem> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}
