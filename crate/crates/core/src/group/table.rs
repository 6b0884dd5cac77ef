use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{FieldElem, FieldSpec, Level};
use crate::group::classes::ConjugacyClasses;
use crate::group::{gl_order, unitary_order, GroupKind, Mat};
use crate::hermitian::HermitianForm;

/// Default cap on the order of an enumerated group.
pub const DEFAULT_GROUP_BOUND: u64 = 200_000;

/// Cap on `Q^n`, the number of vectors scanned when searching for unitary
/// seed elements.
const VECTOR_SCAN_BOUND: u64 = 1_000_000;

/// Seeds tried by the closure construction before giving up.
const MAX_SEEDS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest group order that may be enumerated.
    pub bound: u64,
    /// Seed for the targeted search used by the closure construction.
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            bound: DEFAULT_GROUP_BOUND,
            seed: 0x5eed,
        }
    }
}

/// A fully enumerated finite matrix group. Elements are stored in canonical
/// order, so the position of an element is found by binary search and
/// sorted index lists compare as sets.
#[derive(Debug)]
pub struct GroupTable {
    kind: GroupKind,
    n: usize,
    spec: FieldSpec,
    level: Level,
    form: Option<HermitianForm>,
    elements: Vec<Mat>,
    inverses: Vec<usize>,
    identity: usize,
    pub(crate) classes: OnceLock<ConjugacyClasses>,
}

impl GroupTable {
    fn from_sorted(
        kind: GroupKind,
        spec: &FieldSpec,
        level: Level,
        form: Option<HermitianForm>,
        elements: Vec<Mat>,
    ) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let n = elements[0].n();
        let identity = elements
            .binary_search(&Mat::identity(n))
            .expect("identity is a member");
        let mut table = Self {
            kind,
            n,
            spec: spec.clone(),
            level,
            form,
            elements,
            inverses: Vec::new(),
            identity,
            classes: OnceLock::new(),
        };
        table.inverses = table
            .elements
            .iter()
            .map(|g| {
                let inv = g.inverse(spec).expect("group elements are invertible");
                table.index_of(&inv).expect("closed under inverses")
            })
            .collect();
        table
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Field holding the matrix entries.
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn form(&self) -> Option<&HermitianForm> {
        self.form.as_ref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Mat) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn contains(&self, g: &Mat) -> bool {
        self.index_of(g).is_some()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].mul(&self.elements[b], &self.spec);
        self.index_of(&prod).expect("closed under products")
    }

    /// `g x g^{-1}`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        let gx = self.elements[g].mul(&self.elements[x], &self.spec);
        let gxg = gx.mul(&self.elements[self.inverses[g]], &self.spec);
        self.index_of(&gxg).expect("closed under conjugation")
    }

    /// The order predicted by the product formula for this kind of group.
    pub fn formula_order(&self) -> BigUint {
        match self.kind {
            GroupKind::GeneralLinear => {
                gl_order(self.n as u32, &BigUint::from(self.spec.order(self.level)))
            }
            GroupKind::Unitary => unitary_order(self.n as u32, &BigUint::from(self.spec.q())),
        }
    }
}

fn bound_check(what: String, projected: &BigUint, bound: u64) -> Result<()> {
    if *projected > BigUint::from(bound) {
        return Err(Error::BoundExceeded {
            what,
            projected: projected.to_string(),
            bound,
        });
    }
    Ok(())
}

/// All `n × n` matrices with entries at `level`, in canonical order,
/// passing `keep`.
fn scan_matrices(
    spec: &FieldSpec,
    n: usize,
    level: Level,
    keep: impl Fn(&Mat) -> bool,
) -> Vec<Mat> {
    let elems = spec.elements(level);
    let base = elems.len();
    let cells = n * n;
    let mut digits = vec![0usize; cells];
    let mut out = Vec::new();
    loop {
        let m = Mat::from_vec(n, digits.iter().map(|&d| elems[d]).collect());
        if keep(&m) {
            out.push(m);
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < base {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Enumerates `GL_n(q)`, or `GL_n(q^2)` when `over_extension` is set.
pub fn build_general_linear(
    n: usize,
    spec: &FieldSpec,
    over_extension: bool,
    opts: BuildOptions,
) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let level = if over_extension {
        Level::Extension
    } else {
        Level::Base
    };
    let field_order = spec.order(level);
    let projected = gl_order(n as u32, &BigUint::from(field_order));
    bound_check(format!("GL_{n}({field_order})"), &projected, opts.bound)?;
    let elements = scan_matrices(spec, n, level, |m| m.is_invertible(spec));
    debug_assert_eq!(BigUint::from(elements.len()), projected);
    Ok(GroupTable::from_sorted(
        GroupKind::GeneralLinear,
        spec,
        level,
        None,
        elements,
    ))
}

/// Enumerates `U_n(q) = { g ∈ GL_n(q^2) : ᵗg H ḡ = H }`.
///
/// When `|GL_n(q^2)|` is within the bound the group is filtered out of it
/// directly. Otherwise it is generated from seed elements found by a
/// targeted search, and the closure is accepted only once its size reaches
/// `|U_n(q)|`.
pub fn build_unitary(
    n: usize,
    spec: &FieldSpec,
    form: &HermitianForm,
    opts: BuildOptions,
) -> Result<GroupTable> {
    if spec.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    if form.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: form.rank(),
        });
    }
    let q = BigUint::from(spec.q());
    let projected = unitary_order(n as u32, &q);
    bound_check(format!("U_{n}({})", spec.q()), &projected, opts.bound)?;

    let ambient = gl_order(n as u32, &BigUint::from(spec.size()));
    let elements = if ambient <= BigUint::from(opts.bound) {
        scan_matrices(spec, n, Level::Extension, |g| form.preserves(spec, g))
    } else {
        let target: usize = projected.to_string().parse().expect("within bound");
        unitary_closure(spec, form, target, opts.seed)?
    };
    Ok(GroupTable::from_sorted(
        GroupKind::Unitary,
        spec,
        Level::Extension,
        Some(form.clone()),
        elements,
    ))
}

/// Builds `U(H)` as the closure of random isometries, stopping once the
/// closure has `target` elements.
pub(crate) fn unitary_closure(
    spec: &FieldSpec,
    form: &HermitianForm,
    target: usize,
    seed: u64,
) -> Result<Vec<Mat>> {
    let n = form.rank();
    let vectors = all_vectors(spec, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Mat> = Vec::new();
    let mut group: HashSet<Mat> = HashSet::from([Mat::identity(n)]);
    for _ in 0..MAX_SEEDS {
        if group.len() == target {
            break;
        }
        let g = random_isometry(spec, form, &vectors, &mut rng);
        if group.contains(&g) {
            continue;
        }
        gens.push(g);
        group = closure(spec, &gens);
    }
    if group.len() != target {
        return Err(Error::ClosureIncomplete {
            expected: target.to_string(),
            got: group.len(),
        });
    }
    let mut elements: Vec<Mat> = group.into_iter().collect();
    elements.sort();
    Ok(elements)
}

fn closure(spec: &FieldSpec, gens: &[Mat]) -> HashSet<Mat> {
    let n = gens[0].n();
    let id = Mat::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.mul(s, spec);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn all_vectors(spec: &FieldSpec, n: usize) -> Result<Vec<Vec<FieldElem>>> {
    let count = (spec.size() as u128).checked_pow(n as u32);
    if count.is_none_or(|c| c > VECTOR_SCAN_BOUND as u128) {
        return Err(Error::BoundExceeded {
            what: format!("vectors of F_{}^{n}", spec.size()),
            projected: count.map_or("overflow".into(), |c| c.to_string()),
            bound: VECTOR_SCAN_BOUND,
        });
    }
    let elems = spec.enumerate(false);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |&c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    Ok(out)
}

/// A random `g` with `ᵗg H ḡ = H`, built column by column: the columns of
/// such a `g` are exactly the bases whose Gram matrix under `B` is `H`.
fn random_isometry(
    spec: &FieldSpec,
    form: &HermitianForm,
    vectors: &[Vec<FieldElem>],
    rng: &mut ChaCha8Rng,
) -> Mat {
    let n = form.rank();
    let gram = form.gram();
    'restart: loop {
        let mut cols: Vec<Vec<FieldElem>> = Vec::with_capacity(n);
        for i in 0..n {
            let candidates: Vec<&Vec<FieldElem>> = vectors
                .iter()
                .filter(|v| {
                    form.pairing(spec, v, v) == gram.get(i, i)
                        && cols
                            .iter()
                            .enumerate()
                            .all(|(j, c)| form.pairing(spec, c, v) == gram.get(j, i))
                })
                .collect();
            match candidates.choose(rng) {
                Some(v) => cols.push((*v).clone()),
                None => continue 'restart,
            }
        }
        let g = Mat::from_columns(&cols);
        debug_assert!(form.preserves(spec, &g));
        return g;
    }
}
