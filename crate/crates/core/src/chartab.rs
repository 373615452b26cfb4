//! Character tables and ordinary-character operations: inner products,
//! induction through a stored class fusion, restriction, tensor products,
//! p-regular restriction, block components, condensed degrees and table
//! automorphisms.
//!
//! Tables are immutable after loading; loading validates the standard
//! consistency conditions (class equation, first orthogonality, block
//! partitions, automorphism compatibility) and fails loudly naming the
//! offending data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclo::{CycloError, Cyclotomic};
use crate::{Integer, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("table `{table}`: class {class}: size * centralizer != group order")]
    ClassEquation { table: String, class: String },
    #[error("table `{table}`: class sizes do not sum to the group order")]
    SizeSum { table: String },
    #[error("table `{table}`: first orthogonality fails at characters ({i}, {j})")]
    Orthogonality { table: String, i: usize, j: usize },
    #[error("table `{table}`: bad block partition for p={p}")]
    BadBlocks { table: String, p: u64 },
    #[error("table `{table}`: automorphism `{name}` inconsistent at character {i}, class {c}")]
    BadAutomorphism {
        table: String,
        name: String,
        i: usize,
        c: usize,
    },
    #[error("table mismatch: expected `{expected}`, got `{got}`")]
    TableMismatch { expected: String, got: String },
    #[error("no fusion from `{from}` into `{to}`")]
    MissingFusion { from: String, to: String },
    #[error("no automorphism `{0}` on the table")]
    MissingAutomorphism(String),
    #[error("no block data for p={0}")]
    MissingBlocks(u64),
    #[error("value at class {0} is not available (p-singular image?)")]
    MissingValue(usize),
    #[error("inner product is not a rational integer: {0}")]
    NotInteger(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub size: Integer,
    pub centralizer: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    /// block id per character, in table order
    pub assignment: Vec<usize>,
    /// display label per block id
    pub labels: BTreeMap<usize, String>,
}

impl BlockPartition {
    pub fn block_members(&self, id: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == id)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn id_by_label(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&id, _)| id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAutomorphism {
    pub class_perm: Vec<usize>,
    pub char_perm: Vec<usize>,
}

pub struct CharacterTable {
    pub name: String,
    pub order: Integer,
    pub classes: Vec<ClassInfo>,
    /// per prime, a p-regularity flag for every class
    pub pregular: BTreeMap<u64, Vec<bool>>,
    pub irreducibles: Vec<Vec<Cyclotomic>>,
    pub blocks: BTreeMap<u64, BlockPartition>,
    /// fusions into other tables: target name -> image class index per class
    pub fusions: BTreeMap<String, Vec<usize>>,
    pub automorphisms: BTreeMap<String, TableAutomorphism>,
    /// per character: values as i128 when all are small rational integers
    /// (fast path for the orthogonality validator)
    int_rows: Vec<Option<Vec<i128>>>,
    sizes_i128: Option<Vec<i128>>,
}

/// A class function given by one value per class of its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub table: String,
    pub values: Vec<Cyclotomic>,
}

/// A class function restricted to the p-regular classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerDomainFunction {
    pub table: String,
    pub prime: u64,
    /// class indices (into the full table) that are p-regular
    pub class_indices: Vec<usize>,
    pub values: Vec<Cyclotomic>,
}

/// Anything that yields a value on (some) classes of a table.
pub trait ClassValues {
    fn table_name(&self) -> &str;
    fn value_at(&self, class: usize) -> Option<&Cyclotomic>;
}

impl ClassValues for ClassFunction {
    fn table_name(&self) -> &str {
        &self.table
    }
    fn value_at(&self, class: usize) -> Option<&Cyclotomic> {
        self.values.get(class)
    }
}

impl ClassValues for BrauerDomainFunction {
    fn table_name(&self) -> &str {
        &self.table
    }
    fn value_at(&self, class: usize) -> Option<&Cyclotomic> {
        let pos = self.class_indices.iter().position(|&c| c == class)?;
        self.values.get(pos)
    }
}

impl ClassFunction {
    pub fn new(table: &CharacterTable, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), table.classes.len());
        ClassFunction {
            table: table.name.clone(),
            values,
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.table, other.table);
        ClassFunction {
            table: self.table.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.table, other.table);
        ClassFunction {
            table: self.table.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        let r = Rational::from_integer(BigInt::from(k));
        ClassFunction {
            table: self.table.clone(),
            values: self.values.iter().map(|v| v.scale(&r)).collect(),
        }
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn char_count(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction {
            table: self.name.clone(),
            values: self.irreducibles[i].clone(),
        }
    }

    pub fn trivial(&self) -> ClassFunction {
        ClassFunction {
            table: self.name.clone(),
            values: vec![Cyclotomic::one(); self.class_count()],
        }
    }

    pub fn zero_function(&self) -> ClassFunction {
        ClassFunction {
            table: self.name.clone(),
            values: vec![Cyclotomic::zero(); self.class_count()],
        }
    }

    fn check_table(&self, f: &(impl ClassValues + ?Sized)) -> Result<(), TableError> {
        if f.table_name() != self.name {
            return Err(TableError::TableMismatch {
                expected: self.name.clone(),
                got: f.table_name().into(),
            });
        }
        Ok(())
    }

    /// Exact inner product `(1/|G|) sum size(c) a(c) conj(b(c))`.
    pub fn inner_product(
        &self,
        a: &ClassFunction,
        b: &ClassFunction,
    ) -> Result<Cyclotomic, TableError> {
        self.check_table(a)?;
        self.check_table(b)?;
        let mut acc = Cyclotomic::zero();
        for (c, info) in self.classes.iter().enumerate() {
            let term = a.values[c].mul(&b.values[c].conj());
            acc = acc.add(&term.scale(&Rational::from_integer(info.size.clone())));
        }
        let inv = Rational::new(BigInt::one(), self.order.clone());
        Ok(acc.scale(&inv))
    }

    /// Fast-path delta test of `<chi_i, chi_j>` for stored irreducibles.
    fn irr_inner_product_is_delta(&self, i: usize, j: usize) -> Result<bool, TableError> {
        if let (Some(sizes), Some(ri), Some(rj)) =
            (&self.sizes_i128, &self.int_rows[i], &self.int_rows[j])
        {
            let mut acc: i128 = 0;
            for c in 0..self.class_count() {
                acc += sizes[c] * ri[c] * rj[c];
            }
            let expected = if i == j {
                self.order.to_i128().expect("guarded by sizes_i128")
            } else {
                0
            };
            return Ok(acc == expected);
        }
        let p = self.inner_product(&self.character(i), &self.character(j))?;
        let expected = if i == j {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        };
        Ok(p == expected)
    }

    /// Validate all table invariants.
    pub fn validate(&self) -> Result<(), TableError> {
        let mut sum = Integer::zero();
        for info in &self.classes {
            if &info.size * &info.centralizer != self.order {
                return Err(TableError::ClassEquation {
                    table: self.name.clone(),
                    class: info.name.clone(),
                });
            }
            sum += &info.size;
        }
        if sum != self.order {
            return Err(TableError::SizeSum {
                table: self.name.clone(),
            });
        }
        for i in 0..self.char_count() {
            for j in i..self.char_count() {
                if !self.irr_inner_product_is_delta(i, j)? {
                    return Err(TableError::Orthogonality {
                        table: self.name.clone(),
                        i,
                        j,
                    });
                }
            }
        }
        for (&p, blocks) in &self.blocks {
            if blocks.assignment.len() != self.char_count() {
                return Err(TableError::BadBlocks {
                    table: self.name.clone(),
                    p,
                });
            }
        }
        for (name, auto) in &self.automorphisms {
            let k = self.class_count();
            let m = self.char_count();
            let perm_ok = |perm: &[usize], n: usize| {
                let mut seen = vec![false; n];
                perm.len() == n && perm.iter().all(|&c| c < n && !std::mem::replace(&mut seen[c], true))
            };
            if !perm_ok(&auto.class_perm, k) || !perm_ok(&auto.char_perm, m) {
                return Err(TableError::BadAutomorphism {
                    table: self.name.clone(),
                    name: name.clone(),
                    i: 0,
                    c: 0,
                });
            }
            for i in 0..m {
                for c in 0..k {
                    if self.irreducibles[auto.char_perm[i]][c]
                        != self.irreducibles[i][auto.class_perm[c]]
                    {
                        return Err(TableError::BadAutomorphism {
                            table: self.name.clone(),
                            name: name.clone(),
                            i,
                            c,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Induce a class function along the stored fusion from `sub` into this
    /// table: `(ind f)(g) = |C_G(g)| * sum over fused classes of f/|C_H|`.
    pub fn induce(
        &self,
        sub: &CharacterTable,
        f: &ClassFunction,
    ) -> Result<ClassFunction, TableError> {
        sub.check_table(f)?;
        let fusion = sub
            .fusions
            .get(&self.name)
            .ok_or_else(|| TableError::MissingFusion {
                from: sub.name.clone(),
                to: self.name.clone(),
            })?;
        let mut sums = vec![Cyclotomic::zero(); self.class_count()];
        for (d, &img) in fusion.iter().enumerate() {
            let inv = Rational::new(BigInt::one(), sub.classes[d].centralizer.clone());
            sums[img] = sums[img].add(&f.values[d].scale(&inv));
        }
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(c, s)| s.scale(&Rational::from_integer(self.classes[c].centralizer.clone())))
            .collect();
        Ok(ClassFunction {
            table: self.name.clone(),
            values,
        })
    }

    /// Restrict a class function on this table to `sub` along the fusion.
    pub fn restrict(
        &self,
        sub: &CharacterTable,
        f: &ClassFunction,
    ) -> Result<ClassFunction, TableError> {
        self.check_table(f)?;
        let fusion = sub
            .fusions
            .get(&self.name)
            .ok_or_else(|| TableError::MissingFusion {
                from: sub.name.clone(),
                to: self.name.clone(),
            })?;
        let values = fusion.iter().map(|&img| f.values[img].clone()).collect();
        Ok(ClassFunction {
            table: sub.name.clone(),
            values,
        })
    }

    /// Pointwise product.
    pub fn tensor(
        &self,
        a: &ClassFunction,
        b: &ClassFunction,
    ) -> Result<ClassFunction, TableError> {
        self.check_table(a)?;
        self.check_table(b)?;
        Ok(ClassFunction {
            table: self.name.clone(),
            values: a
                .values
                .iter()
                .zip(&b.values)
                .map(|(x, y)| x.mul(y))
                .collect(),
        })
    }

    /// Restriction to the p-regular classes.  Without stored p-regularity
    /// data for `p` (p does not divide the order), all classes are kept.
    pub fn regular_restriction(
        &self,
        f: &ClassFunction,
        p: u64,
    ) -> Result<BrauerDomainFunction, TableError> {
        self.check_table(f)?;
        let flags = match self.pregular.get(&p) {
            Some(flags) => flags.clone(),
            None => vec![true; self.class_count()],
        };
        let class_indices: Vec<usize> = (0..self.class_count()).filter(|&c| flags[c]).collect();
        let values = class_indices.iter().map(|&c| f.values[c].clone()).collect();
        Ok(BrauerDomainFunction {
            table: self.name.clone(),
            prime: p,
            class_indices,
            values,
        })
    }

    /// Integer vector of `<f, chi>` over the characters of one block.
    pub fn block_component(
        &self,
        f: &ClassFunction,
        p: u64,
        block_id: usize,
    ) -> Result<(Vec<usize>, Vec<Integer>), TableError> {
        let blocks = self.blocks.get(&p).ok_or(TableError::MissingBlocks(p))?;
        let members = blocks.block_members(block_id);
        let mut out = Vec::with_capacity(members.len());
        for &i in &members {
            let ip = self.inner_product(f, &self.character(i))?;
            let v = ip
                .as_integer()
                .map_err(|_| TableError::NotInteger(format!("<f, chi_{i}> = {ip}")))?;
            out.push(v);
        }
        Ok((members, out))
    }

    /// `<res_V f, 1_V>` along a fusion from `vtable` into this table:
    /// `(1/|V|) sum size(d) f(fusion(d))`, an integer for genuine characters.
    pub fn condensed_degree(
        &self,
        vtable: &CharacterTable,
        f: &(impl ClassValues + ?Sized),
    ) -> Result<Integer, TableError> {
        self.check_table(f)?;
        let fusion = vtable
            .fusions
            .get(&self.name)
            .ok_or_else(|| TableError::MissingFusion {
                from: vtable.name.clone(),
                to: self.name.clone(),
            })?;
        let mut acc = Cyclotomic::zero();
        for (d, &img) in fusion.iter().enumerate() {
            let v = f.value_at(img).ok_or(TableError::MissingValue(img))?;
            acc = acc.add(&v.scale(&Rational::from_integer(vtable.classes[d].size.clone())));
        }
        let scaled = acc.scale(&Rational::new(BigInt::one(), vtable.order.clone()));
        scaled
            .as_integer()
            .map_err(|_| TableError::NotInteger(format!("condensed degree = {scaled}")))
    }

    /// Apply a named automorphism to a class function.
    pub fn apply_automorphism(
        &self,
        f: &ClassFunction,
        name: &str,
    ) -> Result<ClassFunction, TableError> {
        self.check_table(f)?;
        let auto = self
            .automorphisms
            .get(name)
            .ok_or_else(|| TableError::MissingAutomorphism(name.into()))?;
        let values = (0..self.class_count())
            .map(|c| f.values[auto.class_perm[c]].clone())
            .collect();
        Ok(ClassFunction {
            table: self.name.clone(),
            values,
        })
    }

    /// p-defect of a character: v_p(|G|) - v_p(chi(1)).
    pub fn defect(&self, i: usize, p: u64) -> Result<u32, TableError> {
        let deg = self.irreducibles[i][0]
            .as_integer()
            .map_err(|_| TableError::NotInteger("character degree".into()))?;
        Ok(valuation(&self.order, p) - valuation(&deg, p))
    }

    fn build_caches(&mut self) {
        let small = |v: &Cyclotomic| -> Option<i128> {
            let r = v.as_rational()?;
            if !r.denom().is_one() {
                return None;
            }
            let n = r.numer().to_i128()?;
            if n.abs() < (1i128 << 30) {
                Some(n)
            } else {
                None
            }
        };
        self.int_rows = self
            .irreducibles
            .iter()
            .map(|row| row.iter().map(small).collect())
            .collect();
        self.sizes_i128 = if self.order < (BigInt::one() << 53) {
            self.classes
                .iter()
                .map(|c| c.size.to_i128())
                .collect::<Option<Vec<_>>>()
        } else {
            None
        };
    }

    /// Parse the exchange format; validation runs before returning.
    pub fn parse(input: &str) -> Result<CharacterTable, TableError> {
        let mut name = String::new();
        let mut order = Integer::zero();
        let mut classes: Vec<ClassInfo> = Vec::new();
        let mut pregular = BTreeMap::new();
        let mut irreducibles: Vec<Vec<Cyclotomic>> = Vec::new();
        let mut blocks: BTreeMap<u64, BlockPartition> = BTreeMap::new();
        let mut fusions = BTreeMap::new();
        let mut automorphisms = BTreeMap::new();

        let perr = |line: usize, msg: String| TableError::Parse { line, msg };
        for (ln, raw) in input.lines().enumerate() {
            let line = ln + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (verb, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
            let rest = rest.trim();
            match verb {
                "table" => name = rest.to_string(),
                "order" => {
                    order = rest
                        .parse()
                        .map_err(|_| perr(line, format!("bad order `{rest}`")))?;
                }
                "class" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != 3 {
                        return Err(perr(line, "class needs: name size centralizer".into()));
                    }
                    classes.push(ClassInfo {
                        name: f[0].into(),
                        size: f[1]
                            .parse()
                            .map_err(|_| perr(line, format!("bad size `{}`", f[1])))?,
                        centralizer: f[2]
                            .parse()
                            .map_err(|_| perr(line, format!("bad centralizer `{}`", f[2])))?,
                    });
                }
                "pregular" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != classes.len() + 1 {
                        return Err(perr(line, "pregular needs: p flag-per-class".into()));
                    }
                    let p: u64 = f[0]
                        .parse()
                        .map_err(|_| perr(line, format!("bad prime `{}`", f[0])))?;
                    let flags = f[1..]
                        .iter()
                        .map(|s| match *s {
                            "0" => Ok(false),
                            "1" => Ok(true),
                            other => Err(perr(line, format!("bad flag `{other}`"))),
                        })
                        .collect::<Result<Vec<bool>, _>>()?;
                    pregular.insert(p, flags);
                }
                "char" => {
                    let values = rest
                        .split('|')
                        .map(|v| Cyclotomic::parse(v.trim()))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| perr(line, e.to_string()))?;
                    if values.len() != classes.len() {
                        return Err(perr(
                            line,
                            format!("expected {} values, got {}", classes.len(), values.len()),
                        ));
                    }
                    irreducibles.push(values);
                }
                "blocks" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != irreducibles.len() + 1 {
                        return Err(perr(line, "blocks needs: p id-per-character".into()));
                    }
                    let p: u64 = f[0]
                        .parse()
                        .map_err(|_| perr(line, format!("bad prime `{}`", f[0])))?;
                    let assignment = f[1..]
                        .iter()
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| perr(line, format!("bad block id `{s}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    blocks.insert(
                        p,
                        BlockPartition {
                            assignment,
                            labels: BTreeMap::new(),
                        },
                    );
                }
                "blocklabel" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != 3 {
                        return Err(perr(line, "blocklabel needs: p id label".into()));
                    }
                    let p: u64 = f[0].parse().map_err(|_| perr(line, "bad prime".into()))?;
                    let id: usize = f[1].parse().map_err(|_| perr(line, "bad id".into()))?;
                    let part = blocks
                        .get_mut(&p)
                        .ok_or_else(|| perr(line, format!("blocklabel before blocks for p={p}")))?;
                    part.labels.insert(id, f[2].into());
                }
                "fusion" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != classes.len() + 1 {
                        return Err(perr(line, "fusion needs: target index-per-class".into()));
                    }
                    let map = f[1..]
                        .iter()
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| perr(line, format!("bad index `{s}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    fusions.insert(f[0].to_string(), map);
                }
                "automorphism" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    let k = classes.len();
                    let m = irreducibles.len();
                    if f.len() != 3 + k + m || f[1] != "classes" || f[2 + k] != "chars" {
                        return Err(perr(
                            line,
                            "automorphism needs: name classes <k indices> chars <m indices>".into(),
                        ));
                    }
                    let parse_perm = |fields: &[&str]| {
                        fields
                            .iter()
                            .map(|s| {
                                s.parse::<usize>()
                                    .map_err(|_| perr(line, format!("bad index `{s}`")))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    };
                    let class_perm = parse_perm(&f[2..2 + k])?;
                    let char_perm = parse_perm(&f[3 + k..])?;
                    automorphisms.insert(
                        f[0].to_string(),
                        TableAutomorphism {
                            class_perm,
                            char_perm,
                        },
                    );
                }
                other => return Err(perr(line, format!("unknown directive `{other}`"))),
            }
        }

        let mut table = CharacterTable {
            name,
            order,
            classes,
            pregular,
            irreducibles,
            blocks,
            fusions,
            automorphisms,
            int_rows: Vec::new(),
            sizes_i128: None,
        };
        table.build_caches();
        table.validate()?;
        Ok(table)
    }

    /// Programmatic constructor; validates like the parser.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        name: &str,
        order: Integer,
        classes: Vec<ClassInfo>,
        pregular: BTreeMap<u64, Vec<bool>>,
        irreducibles: Vec<Vec<Cyclotomic>>,
        blocks: BTreeMap<u64, BlockPartition>,
        fusions: BTreeMap<String, Vec<usize>>,
        automorphisms: BTreeMap<String, TableAutomorphism>,
    ) -> Result<CharacterTable, TableError> {
        let mut table = CharacterTable {
            name: name.into(),
            order,
            classes,
            pregular,
            irreducibles,
            blocks,
            fusions,
            automorphisms,
            int_rows: Vec::new(),
            sizes_i128: None,
        };
        table.build_caches();
        table.validate()?;
        Ok(table)
    }
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CharacterTable({}, |G|={}, {} classes, {} chars)",
            self.name,
            self.order,
            self.class_count(),
            self.char_count()
        )
    }
}

pub fn valuation(n: &Integer, p: u64) -> u32 {
    let p = Integer::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}
