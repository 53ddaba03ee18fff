//! Integer partitions, the classes of KMS weight vectors they label, and the
//! free product of free wreath products attached to each class.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kms::KmsWeightVector;
use crate::scalar::Scalar;

/// Default upper bound for partition enumeration.
pub const PARTITION_CAP: usize = 60;
/// Default single-linkage tolerance for float weights.
pub const DEFAULT_GROUPING_EPS: f64 = 1e-9;

/// Block sizes in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidPartition("zero block size".into()));
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(blocks))
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    /// The integer being partitioned.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive vertex blocks `[1..=m1], [m1+1..=m1+m2], ...`.
    pub fn consecutive_vertices(&self) -> Vec<Vec<usize>> {
        let mut next = 1;
        self.0
            .iter()
            .map(|&m| {
                let block: Vec<usize> = (next..next + m).collect();
                next += m;
                block
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_range(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::OutOfRange { n, cap });
    }
    Ok(())
}

/// All partitions of `n`, largest first part first: `(3), (2,1), (1,1,1)`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_capped(n, PARTITION_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<Vec<Partition>> {
    check_range(n, cap)?;
    fn extend(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `p(n)` by Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> Result<u128> {
    partition_count_capped(n, PARTITION_CAP)
}

pub fn partition_count_capped(n: usize, cap: usize) -> Result<u128> {
    check_range(n, cap)?;
    let mut table = vec![0i128; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut sum = 0i128;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * table[i - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                sum += sign * table[i - g2];
            }
        }
        table[i] = sum;
    }
    Ok(table[n] as u128)
}

/// Vertices sharing one weight value.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightBlock<S> {
    pub value: S,
    /// 1-based vertex indices, ascending.
    pub vertices: Vec<usize>,
}

/// The class `[P]` of a weight vector: equal weights grouped into blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct StateClass<S> {
    partition: Partition,
    blocks: Vec<WeightBlock<S>>,
}

impl<S: Scalar> StateClass<S> {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Ordered by size descending, then value descending.
    pub fn blocks(&self) -> &[WeightBlock<S>] {
        &self.blocks
    }

    pub fn num_vertices(&self) -> usize {
        self.partition.total()
    }

    /// `assignment()[v - 1]` is the 0-based block index of vertex `v`.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_vertices()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in &block.vertices {
                out[v - 1] = b;
            }
        }
        out
    }

    pub fn vertex_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.vertices.clone()).collect()
    }

    /// The weight vector carried by the block values.
    pub fn reconstruct(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.num_vertices()];
        for block in &self.blocks {
            for &v in &block.vertices {
                out[v - 1] = block.value.clone();
            }
        }
        out
    }

    pub fn descriptor(&self) -> SymmetryDescriptor {
        SymmetryDescriptor::new(&self.partition)
    }
}

/// Group equal weights. Exact scalars pass `eps = 0`; floats are grouped by
/// single linkage with `|a - b| <= eps` and rejected if a chain spans more than `eps`.
pub fn classify_weights<S: Scalar>(w: &KmsWeightVector<S>, eps: &S) -> Result<StateClass<S>> {
    if !w.beta().is_zero() {
        return Err(Error::NonzeroBeta);
    }
    let weights = w.weights();
    for (k, x) in weights.iter().enumerate() {
        if *x <= S::zero() {
            return Err(Error::NonPositiveWeight {
                vertex: k + 1,
                value: x.to_string(),
            });
        }
    }
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[a].partial_cmp(&weights[b]).expect("weights are comparable"));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if (weights[v].clone() - weights[*g.last().unwrap()].clone()) <= *eps => g.push(v),
            _ => groups.push(vec![v]),
        }
    }

    let mut blocks = Vec::with_capacity(groups.len());
    for g in groups {
        let (lo, hi) = (g[0], *g.last().unwrap());
        if weights[hi].clone() - weights[lo].clone() > *eps {
            return Err(Error::InconsistentGrouping(lo.min(hi) + 1, lo.max(hi) + 1));
        }
        let count = S::from_usize(g.len()).expect("count fits");
        let value = g.iter().fold(S::zero(), |acc, &v| acc + weights[v].clone()) / count;
        let value = if S::EXACT { weights[lo].clone() } else { value };
        let mut vertices: Vec<usize> = g.iter().map(|&v| v + 1).collect();
        vertices.sort_unstable();
        blocks.push(WeightBlock { value, vertices });
    }
    blocks.sort_by(|a, b| {
        b.vertices
            .len()
            .cmp(&a.vertices.len())
            .then_with(|| b.value.partial_cmp(&a.value).expect("weights are comparable"))
    });
    let partition = Partition::new(blocks.iter().map(|b| b.vertices.len()).collect())?;
    Ok(StateClass { partition, blocks })
}

/// How symmetry names are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NameStyle {
    #[default]
    Unicode,
    Ascii,
}

fn subscript(m: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    m.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// One free factor `C(S^1) wr S_m^+`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WreathFactor {
    pub size: usize,
    /// The factor written without collapsing `m = 1`.
    pub uncollapsed: String,
    /// `m = 1`: the quantum permutation part is trivial and the factor is `C(S^1)`.
    pub is_trivial_permutation_part: bool,
    /// `m <= 3`: `S_m^+` coincides with the classical permutation group.
    pub classical_permutation_part: bool,
}

impl WreathFactor {
    fn new(size: usize) -> Self {
        WreathFactor {
            size,
            uncollapsed: format!("C(S¹) ≀ S{}⁺", subscript(size)),
            is_trivial_permutation_part: size == 1,
            classical_permutation_part: size <= 3,
        }
    }

    pub fn name(&self, style: NameStyle) -> String {
        match (style, self.size) {
            (NameStyle::Unicode, 1) => "C(S¹)".to_string(),
            (NameStyle::Ascii, 1) => "C(S^1)".to_string(),
            (NameStyle::Unicode, m) => format!("C(S¹) ≀ S{}⁺", subscript(m)),
            (NameStyle::Ascii, m) => format!("C(S^1) wr S_{m}^+"),
        }
    }
}

/// Free product over the blocks of a partition of `C(S^1) wr S_{m_i}^+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryDescriptor {
    partition: Partition,
    factors: Vec<WreathFactor>,
}

impl SymmetryDescriptor {
    pub fn new(p: &Partition) -> Self {
        SymmetryDescriptor {
            partition: p.clone(),
            factors: p.blocks().iter().map(|&m| WreathFactor::new(m)).collect(),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn factors(&self) -> &[WreathFactor] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn name(&self, style: NameStyle) -> String {
        if let [single] = self.factors.as_slice() {
            return single.name(style);
        }
        let star = match style {
            NameStyle::Unicode => " ⋆ ",
            NameStyle::Ascii => " * ",
        };
        self.factors
            .iter()
            .map(|f| {
                let name = f.name(style);
                if f.size == 1 {
                    name
                } else {
                    format!("({name})")
                }
            })
            .collect::<Vec<_>>()
            .join(star)
    }

    pub fn canonical_name(&self) -> String {
        self.name(NameStyle::Unicode)
    }
}

impl fmt::Display for SymmetryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_name())
    }
}

pub fn symmetry_descriptor(p: &Partition) -> SymmetryDescriptor {
    SymmetryDescriptor::new(p)
}

/// One descriptor per partition of `n`, in enumeration order.
pub fn descriptors_for_n(n: usize) -> Result<Vec<SymmetryDescriptor>> {
    Ok(enumerate_partitions(n)?.iter().map(SymmetryDescriptor::new).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDocument {
    pub value: String,
    pub vertices: Vec<usize>,
}

/// Structured form of a state class together with its symmetry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationDocument {
    pub partition: Partition,
    pub blocks: Vec<BlockDocument>,
    pub symmetry: String,
    pub factor_count: usize,
    pub factors: Vec<WreathFactor>,
}

impl ClassificationDocument {
    pub fn new<S: Scalar>(class: &StateClass<S>, style: NameStyle) -> Self {
        let descriptor = class.descriptor();
        ClassificationDocument {
            partition: class.partition().clone(),
            blocks: class
                .blocks()
                .iter()
                .map(|b| BlockDocument {
                    value: b.value.to_string(),
                    vertices: b.vertices.clone(),
                })
                .collect(),
            symmetry: descriptor.name(style),
            factor_count: descriptor.factor_count(),
            factors: descriptor.factors().to_vec(),
        }
    }
}
