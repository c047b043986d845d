//! Young diagrams, boxes and nested flags of diagrams.
//!
//! A diagram is stored by its column heights `ν_0 ≥ ν_1 ≥ …`. The box
//! `(u, v)` stands for the monomial `x^u y^v`, so `u` is the column and `v`
//! the row.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YoungError {
    #[error("column heights must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("column heights must be positive: {0:?}")]
    ZeroColumn(Vec<usize>),
    #[error("box {0} is not in the diagram")]
    Outside(Cell),
    #[error("the empty diagram has no corners")]
    Empty,
    #[error("box {0} cannot be added to the diagram")]
    NotAddable(Cell),
    #[error("box {0} cannot be removed from the diagram")]
    NotRemovable(Cell),
    #[error("boxes {0} and {1} coincide")]
    Repeated(Cell, Cell),
}

/// A lattice box `x^u y^v`. Serialized as `[u, v]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Cell {
    pub u: i32,
    pub v: i32,
}

impl Cell {
    pub const fn new(u: i32, v: i32) -> Self {
        Cell { u, v }
    }

    /// Total degree `u + v`, i.e. the antidiagonal the box sits on.
    pub fn deg(self) -> i32 {
        self.u + self.v
    }

    pub fn shift(self, du: i32, dv: i32) -> Cell {
        Cell::new(self.u + du, self.v + dv)
    }

    pub fn transpose(self) -> Cell {
        Cell::new(self.v, self.u)
    }

    /// `self - other` as a weight.
    pub fn minus(self, other: Cell) -> (i32, i32) {
        (self.u - other.u, self.v - other.v)
    }

    pub fn in_quadrant(self) -> bool {
        self.u >= 0 && self.v >= 0
    }
}

impl From<[i32; 2]> for Cell {
    fn from(a: [i32; 2]) -> Self {
        Cell::new(a[0], a[1])
    }
}

impl From<Cell> for [i32; 2] {
    fn from(c: Cell) -> Self {
        [c.u, c.v]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Deserialize)]
struct RawDiagram {
    columns: Vec<usize>,
}

impl TryFrom<RawDiagram> for YoungDiagram {
    type Error = YoungError;
    fn try_from(raw: RawDiagram) -> Result<Self, YoungError> {
        YoungDiagram::from_column_heights(raw.columns)
    }
}

/// A partition, stored as weakly decreasing positive column heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "RawDiagram")]
pub struct YoungDiagram {
    columns: Vec<usize>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram { columns: Vec::new() }
    }

    pub fn from_column_heights(heights: Vec<usize>) -> Result<Self, YoungError> {
        if heights.contains(&0) {
            return Err(YoungError::ZeroColumn(heights));
        }
        if heights.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::NotDecreasing(heights));
        }
        Ok(YoungDiagram { columns: heights })
    }

    /// Build from row lengths, bottom row first.
    pub fn from_row_lengths(rows: Vec<usize>) -> Result<Self, YoungError> {
        Ok(YoungDiagram::from_column_heights(rows)?.transpose())
    }

    /// The diagram formed by a finite box set, if that set is a Young diagram.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Option<Self> {
        let mut heights: Vec<usize> = Vec::new();
        let mut count = 0usize;
        for c in cells {
            if !c.in_quadrant() {
                return None;
            }
            let u = c.u as usize;
            if heights.len() <= u {
                heights.resize(u + 1, 0);
            }
            heights[u] = heights[u].max(c.v as usize + 1);
            count += 1;
        }
        let d = YoungDiagram::from_column_heights(heights).ok()?;
        // a down-left closed set has exactly as many boxes as its hull
        (d.size() == count).then_some(d)
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// Row lengths, bottom row first.
    pub fn rows(&self) -> Vec<usize> {
        self.transpose().columns
    }

    pub fn size(&self) -> usize {
        self.columns.iter().sum()
    }

    /// Number of columns, ℓ.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn height(&self, u: i32) -> usize {
        if u < 0 {
            return 0;
        }
        self.columns.get(u as usize).copied().unwrap_or(0)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.in_quadrant() && (c.v as usize) < self.height(c.u)
    }

    /// Boxes in column-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (u, &h) in self.columns.iter().enumerate() {
            for v in 0..h {
                out.push(Cell::new(u as i32, v as i32));
            }
        }
        out
    }

    pub fn transpose(&self) -> YoungDiagram {
        let top = self.columns.first().copied().unwrap_or(0);
        let columns = (0..top)
            .map(|v| self.columns.iter().filter(|&&h| h > v).count())
            .collect();
        YoungDiagram { columns }
    }

    /// External corners `α_0, …, α_s`, by strictly decreasing `u`.
    ///
    /// The empty diagram has the single generator `(0, 0)`.
    pub fn generators(&self) -> Vec<Cell> {
        let l = self.columns.len();
        let mut gens = Vec::new();
        for i in 0..=l {
            let h = self.height(i as i32);
            if i == 0 || h < self.columns[i - 1] {
                gens.push(Cell::new(i as i32, h as i32));
            }
        }
        gens.reverse();
        gens
    }

    pub fn is_addable(&self, c: Cell) -> bool {
        c.in_quadrant()
            && !self.contains(c)
            && (c.u == 0 || self.contains(c.shift(-1, 0)))
            && (c.v == 0 || self.contains(c.shift(0, -1)))
    }

    pub fn is_removable(&self, c: Cell) -> bool {
        self.contains(c) && !self.contains(c.shift(1, 0)) && !self.contains(c.shift(0, 1))
    }

    /// Removable boxes `β_0, …`, numbered from the right.
    pub fn corners(&self) -> Result<Vec<Cell>, YoungError> {
        if self.is_empty() {
            return Err(YoungError::Empty);
        }
        let l = self.columns.len();
        let mut out = Vec::new();
        for i in (0..l).rev() {
            if i + 1 == l || self.columns[i + 1] < self.columns[i] {
                out.push(Cell::new(i as i32, self.columns[i] as i32 - 1));
            }
        }
        Ok(out)
    }

    pub fn with_cell(&self, c: Cell) -> Result<YoungDiagram, YoungError> {
        if !self.is_addable(c) {
            return Err(YoungError::NotAddable(c));
        }
        let mut columns = self.columns.clone();
        if c.u as usize == columns.len() {
            columns.push(1);
        } else {
            columns[c.u as usize] += 1;
        }
        Ok(YoungDiagram { columns })
    }

    pub fn without_cell(&self, c: Cell) -> Result<YoungDiagram, YoungError> {
        if !self.is_removable(c) {
            return Err(YoungError::NotRemovable(c));
        }
        let mut columns = self.columns.clone();
        columns[c.u as usize] -= 1;
        if columns[c.u as usize] == 0 {
            columns.pop();
        }
        Ok(YoungDiagram { columns })
    }

    /// Boxes strictly right of `b` in its row minus boxes strictly above it.
    pub fn hook_difference(&self, b: Cell) -> Result<i32, YoungError> {
        if !self.contains(b) {
            return Err(YoungError::Outside(b));
        }
        let mut right = 0;
        while self.contains(b.shift(right + 1, 0)) {
            right += 1;
        }
        let above = self.height(b.u) as i32 - b.v - 1;
        Ok(right - above)
    }

    /// Hook differences of all boxes, in `cells()` order.
    pub fn hook_differences(&self) -> Vec<(Cell, i32)> {
        let rows = self.rows();
        self.cells()
            .into_iter()
            .map(|c| {
                let right = rows[c.v as usize] as i32 - c.u - 1;
                let above = self.height(c.u) as i32 - c.v - 1;
                (c, right - above)
            })
            .collect()
    }

    /// Number of boxes on each antidiagonal, trailing zeros trimmed.
    pub fn diagonal_sequence(&self) -> Vec<usize> {
        let mut t = Vec::new();
        for c in self.cells() {
            let d = c.deg() as usize;
            if t.len() <= d {
                t.resize(d + 1, 0);
            }
            t[d] += 1;
        }
        t
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, h) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "]")
    }
}

/// Vertical gap `p_i = v(α_{i+1}) - v(α_i)`; `None` stands for `p_s = ∞`.
pub fn p_gap(gens: &[Cell], i: usize) -> Option<i32> {
    gens.get(i + 1).map(|next| next.v - gens[i].v)
}

/// Horizontal gap `q_i = u(α_{i-1}) - u(α_i)`; `None` stands for `q_0 = ∞`.
pub fn q_gap(gens: &[Cell], i: usize) -> Option<i32> {
    (i > 0).then(|| gens[i - 1].u - gens[i].u)
}

/// How the generators change when the generator `α_j` is added.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepCase {
    /// `q_j = 1`, `p_j ≠ 1`: `α_j` is replaced by `yα_j`.
    OneA,
    /// `p_j = 1`, `q_j ≠ 1`: `α_j` is replaced by `xα_j`.
    OneB,
    /// both gaps exceed one: `α_j` splits into `xα_j` and `yα_j`.
    Two,
    /// `p_j = q_j = 1`: `α_j` disappears.
    Three,
}

impl StepCase {
    pub fn classify(gens: &[Cell], j: usize) -> StepCase {
        let p1 = p_gap(gens, j) == Some(1);
        let q1 = q_gap(gens, j) == Some(1);
        match (q1, p1) {
            (true, false) => StepCase::OneA,
            (false, true) => StepCase::OneB,
            (false, false) => StepCase::Two,
            (true, true) => StepCase::Three,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StepCase::OneA => "1a",
            StepCase::OneB => "1b",
            StepCase::Two => "2",
            StepCase::Three => "3",
        }
    }
}

/// `Γ₁ ⊂ Γ₂ = Γ₁ ∪ {α_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag2 {
    base: YoungDiagram,
    top: YoungDiagram,
    added: Cell,
    j: usize,
    case: StepCase,
}

impl Flag2 {
    pub fn new(base: YoungDiagram, added: Cell) -> Result<Self, YoungError> {
        let gens = base.generators();
        let j = gens
            .iter()
            .position(|&g| g == added)
            .ok_or(YoungError::NotAddable(added))?;
        let top = base.with_cell(added)?;
        let case = StepCase::classify(&gens, j);
        Ok(Flag2 { base, top, added, j, case })
    }

    pub fn base(&self) -> &YoungDiagram {
        &self.base
    }

    pub fn top(&self) -> &YoungDiagram {
        &self.top
    }

    /// The added box `α_j`.
    pub fn added(&self) -> Cell {
        self.added
    }

    /// Index of `α_j` among the generators of the base.
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn case(&self) -> StepCase {
        self.case
    }

    pub fn n(&self) -> usize {
        self.base.size()
    }
}

impl Serialize for Flag2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Flag2", 2)?;
        st.serialize_field("columns", self.base.columns())?;
        st.serialize_field("added", &self.added)?;
        st.end()
    }
}

/// `Γ₁ ⊂ Γ₂ = Γ₁ ∪ {α_j} ⊂ Γ₃ = Γ₂ ∪ {α'_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag3 {
    lower: Flag2,
    upper: Flag2,
}

impl Flag3 {
    pub fn new(base: YoungDiagram, first: Cell, second: Cell) -> Result<Self, YoungError> {
        if first == second {
            return Err(YoungError::Repeated(first, second));
        }
        let lower = Flag2::new(base, first)?;
        let upper = Flag2::new(lower.top.clone(), second)?;
        Ok(Flag3 { lower, upper })
    }

    pub fn from_steps(lower: Flag2, upper: Flag2) -> Option<Self> {
        (lower.top == upper.base).then_some(Flag3 { lower, upper })
    }

    pub fn base(&self) -> &YoungDiagram {
        &self.lower.base
    }

    pub fn middle(&self) -> &YoungDiagram {
        &self.lower.top
    }

    pub fn top(&self) -> &YoungDiagram {
        &self.upper.top
    }

    /// `α_j`.
    pub fn first(&self) -> Cell {
        self.lower.added
    }

    /// `α'_l`.
    pub fn second(&self) -> Cell {
        self.upper.added
    }

    /// The step `Γ₁ ⊂ Γ₂`.
    pub fn lower(&self) -> &Flag2 {
        &self.lower
    }

    /// The step `Γ₂ ⊂ Γ₃`.
    pub fn upper(&self) -> &Flag2 {
        &self.upper
    }

    /// Case b: `α'_l` sits immediately above or to the right of `α_j`.
    pub fn is_case_b(&self) -> bool {
        let (a, b) = (self.first(), self.second());
        b == a.shift(0, 1) || b == a.shift(1, 0)
    }

    pub fn n(&self) -> usize {
        self.lower.n()
    }
}

impl Serialize for Flag3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Flag3", 2)?;
        st.serialize_field("columns", self.base().columns())?;
        st.serialize_field("added", &[self.first(), self.second()])?;
        st.end()
    }
}

fn partitions_into(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
    if n == 0 {
        out.push(YoungDiagram { columns: prefix.clone() });
        return;
    }
    for first in 1..=n.min(max) {
        prefix.push(first);
        partitions_into(n - first, first, prefix, out);
        prefix.pop();
    }
}

fn partition_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<YoungDiagram>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<YoungDiagram>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All diagrams of size `n`, lexicographic on column heights.
pub fn enumerate_partitions(n: usize) -> Arc<Vec<YoungDiagram>> {
    if let Some(hit) = partition_cache().lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let mut out = Vec::new();
    partitions_into(n, n, &mut Vec::new(), &mut out);
    let out = Arc::new(out);
    partition_cache().lock().unwrap().insert(n, Arc::clone(&out));
    out
}

pub fn enumerate_flags2(n: usize) -> Vec<Flag2> {
    let mut out = Vec::new();
    for d in enumerate_partitions(n).iter() {
        for g in d.generators() {
            out.push(Flag2::new(d.clone(), g).expect("generators are addable"));
        }
    }
    out
}

pub fn enumerate_flags3(n: usize) -> Vec<Flag3> {
    let mut out = Vec::new();
    for lower in enumerate_flags2(n) {
        for g in lower.top().generators() {
            let upper = Flag2::new(lower.top().clone(), g).expect("generators are addable");
            out.push(Flag3 { lower: lower.clone(), upper });
        }
    }
    out
}

/// Saturated chains in Young's lattice from rank `k` to rank `m`, summed
/// over all start and end shapes.
pub fn count_chains(k: usize, m: usize) -> u64 {
    assert!(k <= m, "count_chains needs k <= m");
    let mut layer: HashMap<YoungDiagram, u64> =
        enumerate_partitions(k).iter().map(|d| (d.clone(), 1)).collect();
    for _ in k..m {
        let mut next: HashMap<YoungDiagram, u64> = HashMap::new();
        for (d, w) in &layer {
            for g in d.generators() {
                *next.entry(d.with_cell(g).unwrap()).or_default() += w;
            }
        }
        layer = next;
    }
    layer.values().sum()
}
