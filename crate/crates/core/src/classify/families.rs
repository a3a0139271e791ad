//! Named diagram families: Dynkin, extended Dynkin, minimal infinite and critical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::{canonical_form, CanonicalKey, Diagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize)]
pub enum FamilyKind {
    Dynkin,
    Extended,
    Minimal,
    Critical,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [FamilyKind::Dynkin, FamilyKind::Extended, FamilyKind::Minimal, FamilyKind::Critical];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dynkin" => Ok(FamilyKind::Dynkin),
            "extended" | "affine" => Ok(FamilyKind::Extended),
            "minimal" => Ok(FamilyKind::Minimal),
            "critical" => Ok(FamilyKind::Critical),
            other => Err(Error::BadParams(format!("unknown family kind {other:?}"))),
        }
    }

    /// Smallest vertex count of any member.
    pub fn min_vertices(self) -> usize {
        match self {
            FamilyKind::Dynkin => 1,
            FamilyKind::Extended => 2,
            FamilyKind::Minimal | FamilyKind::Critical => 4,
        }
    }
}

/// A member type of one of the families, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    AffA(usize),
    AffB(usize),
    AffC(usize),
    AffD(usize),
    AffE(usize),
    AffF4,
    AffG2,
    MinB { m: usize, r: usize },
    MinBr { r: usize },
    MinD { m: usize, r: usize },
    MinD3 { m: usize, r: usize, s: usize },
    MinDr { r: usize },
    CritB4 { m: usize },
    CritB { m: usize, r: usize },
    CritBr { r: usize },
    CritD4 { m: usize },
    CritD4Cycle { m: usize, r: usize },
    CritD { m: usize, r: usize },
    CritD3 { m: usize, r: usize, s: usize },
    CritDr { r: usize },
}

use Shape::*;

impl Shape {
    pub fn kind(self) -> FamilyKind {
        match self {
            A(_) | B(_) | D(_) | E(_) | F4 | G2 => FamilyKind::Dynkin,
            AffA(_) | AffB(_) | AffC(_) | AffD(_) | AffE(_) | AffF4 | AffG2 => FamilyKind::Extended,
            MinB { .. } | MinBr { .. } | MinD { .. } | MinD3 { .. } | MinDr { .. } => FamilyKind::Minimal,
            _ => FamilyKind::Critical,
        }
    }

    /// The subscript `n` of the type name.
    pub fn rank(self) -> usize {
        match self {
            A(n) | B(n) | D(n) | E(n) | AffA(n) | AffB(n) | AffC(n) | AffD(n) | AffE(n) => n,
            F4 | AffF4 => 4,
            G2 | AffG2 => 2,
            MinB { m, r } | CritB { m, r } => m + r,
            MinBr { r } | CritBr { r } => r,
            MinD { m, r } | CritD4Cycle { m, r } | CritD { m, r } => m + r + 1,
            MinD3 { m, r, s } | CritD3 { m, r, s } => m + r + s - 1,
            MinDr { r } | CritDr { r } => r + 1,
            CritB4 { m } => m + 2,
            CritD4 { m } => m + 3,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self.kind() {
            FamilyKind::Dynkin => self.rank(),
            _ => self.rank() + 1,
        }
    }

    fn params(self) -> BTreeMap<String, usize> {
        let pairs: Vec<(&str, usize)> = match self {
            A(n) | B(n) | D(n) | E(n) | AffA(n) | AffB(n) | AffC(n) | AffD(n) | AffE(n) => vec![("n", n)],
            F4 | AffF4 => vec![("n", 4)],
            G2 | AffG2 => vec![("n", 2)],
            MinB { m, r } | MinD { m, r } | CritB { m, r } | CritD4Cycle { m, r } | CritD { m, r } => {
                vec![("m", m), ("r", r)]
            }
            MinD3 { m, r, s } | CritD3 { m, r, s } => vec![("m", m), ("r", r), ("s", s)],
            MinBr { r } | MinDr { r } | CritBr { r } | CritDr { r } => vec![("r", r)],
            CritB4 { m } | CritD4 { m } => vec![("m", m)],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    pub fn type_name(self) -> String {
        let n = self.rank();
        match self {
            A(_) => format!("A_{n}"),
            B(_) => format!("B_{n}"),
            D(_) => format!("D_{n}"),
            E(_) => format!("E_{n}"),
            F4 => "F_4".into(),
            G2 => "G_2".into(),
            AffA(_) => format!("A_{n}^{{(1)}}"),
            AffB(_) => format!("B_{n}^{{(1)}}"),
            AffC(_) => format!("C_{n}^{{(1)}}"),
            AffD(_) => format!("D_{n}^{{(1)}}"),
            AffE(_) => format!("E_{n}^{{(1)}}"),
            AffF4 => "F_4^{(1)}".into(),
            AffG2 => "G_2^{(1)}".into(),
            MinB { m, r } => format!("B_{n}^{{(1)}}({m},{r})"),
            MinBr { r } => format!("B_{n}^{{(1)}}({r})"),
            MinD { m, r } => format!("D_{n}^{{(1)}}({m},{r})"),
            MinD3 { m, r, s } => format!("D_{n}^{{(1)}}({m},{r},{s})"),
            MinDr { r } => format!("D_{n}^{{(1)}}({r})"),
            CritB4 { .. } => format!("B\u{30c}_{n}^{{(4)}}"),
            CritB { m, r } => format!("B\u{30c}_{n}^{{(1)}}({m},{r})"),
            CritBr { r } => format!("B\u{30c}_{n}^{{(1)}}({r})"),
            CritD4 { .. } => format!("\u{10e}_{n}^{{(4)}}"),
            CritD4Cycle { m, r } => format!("\u{10e}_{n}^{{(4)}}({m},{r})"),
            CritD { m, r } => format!("\u{10e}_{n}^{{(1)}}({m},{r})"),
            CritD3 { m, r, s } => format!("\u{10e}_{n}^{{(1)}}({m},{r},{s})"),
            CritDr { r } => format!("\u{10e}_{n}^{{(1)}}({r})"),
        }
    }

    fn valid(self) -> bool {
        match self {
            A(n) => n >= 1,
            B(n) => n >= 2,
            D(n) => n >= 4,
            E(n) => (6..=8).contains(&n),
            AffA(n) => n >= 1,
            AffB(n) => n >= 3,
            AffC(n) => n >= 2,
            AffD(n) => n >= 4,
            AffE(n) => (6..=8).contains(&n),
            F4 | G2 | AffF4 | AffG2 => true,
            MinB { m, r } | MinD { m, r } | CritB { m, r } | CritD4Cycle { m, r } | CritD { m, r } => m >= 1 && r >= 3,
            MinD3 { m, r, s } | CritD3 { m, r, s } => m >= 1 && r >= 3 && s >= 3,
            MinBr { r } | MinDr { r } | CritBr { r } | CritDr { r } => r >= 3,
            CritB4 { m } | CritD4 { m } => m >= 1,
        }
    }

    /// Parse a short code such as `A`, `F`, `D3` or `B4` together with its parameters.
    pub fn from_code(kind: FamilyKind, code: &str, params: &BTreeMap<String, usize>) -> Result<Shape> {
        let get = |k: &str| {
            params.get(k).copied().ok_or_else(|| Error::BadParams(format!("missing parameter {k}")))
        };
        let shape = match (kind, code) {
            (FamilyKind::Dynkin, "A") => A(get("n")?),
            (FamilyKind::Dynkin, "B") => B(get("n")?),
            (FamilyKind::Dynkin, "D") => D(get("n")?),
            (FamilyKind::Dynkin, "E") => E(get("n")?),
            (FamilyKind::Dynkin, "F") => F4,
            (FamilyKind::Dynkin, "G") => G2,
            (FamilyKind::Extended, "A") => AffA(get("n")?),
            (FamilyKind::Extended, "B") => AffB(get("n")?),
            (FamilyKind::Extended, "C") => AffC(get("n")?),
            (FamilyKind::Extended, "D") => AffD(get("n")?),
            (FamilyKind::Extended, "E") => AffE(get("n")?),
            (FamilyKind::Extended, "F") => AffF4,
            (FamilyKind::Extended, "G") => AffG2,
            (FamilyKind::Minimal, "B") => MinB { m: get("m")?, r: get("r")? },
            (FamilyKind::Minimal, "Br") => MinBr { r: get("r")? },
            (FamilyKind::Minimal, "D") => MinD { m: get("m")?, r: get("r")? },
            (FamilyKind::Minimal, "D3") => MinD3 { m: get("m")?, r: get("r")?, s: get("s")? },
            (FamilyKind::Minimal, "Dr") => MinDr { r: get("r")? },
            (FamilyKind::Critical, "B4") => CritB4 { m: get("m")? },
            (FamilyKind::Critical, "B") => CritB { m: get("m")?, r: get("r")? },
            (FamilyKind::Critical, "Br") => CritBr { r: get("r")? },
            (FamilyKind::Critical, "D4") => CritD4 { m: get("m")? },
            (FamilyKind::Critical, "D4c") => CritD4Cycle { m: get("m")?, r: get("r")? },
            (FamilyKind::Critical, "D") => CritD { m: get("m")?, r: get("r")? },
            (FamilyKind::Critical, "D3") => CritD3 { m: get("m")?, r: get("r")?, s: get("s")? },
            (FamilyKind::Critical, "Dr") => CritDr { r: get("r")? },
            _ => return Err(Error::BadParams(format!("unknown type code {code:?} for {kind:?}"))),
        };
        if !shape.valid() {
            return Err(Error::BadParams(format!("parameters out of range for {code}")));
        }
        Ok(shape)
    }

    /// All shapes of `kind` with exactly `v` vertices.
    pub fn with_vertices(kind: FamilyKind, v: usize) -> Vec<Shape> {
        let mut out = Vec::new();
        match kind {
            FamilyKind::Dynkin => {
                out.extend([A(v), B(v), D(v), E(v)]);
                if v == 4 {
                    out.push(F4);
                }
                if v == 2 {
                    out.push(G2);
                }
            }
            FamilyKind::Extended if v >= 2 => {
                let n = v - 1;
                out.extend([AffA(n), AffB(n), AffC(n), AffD(n), AffE(n)]);
                if n == 4 {
                    out.push(AffF4);
                }
                if n == 2 {
                    out.push(AffG2);
                }
            }
            FamilyKind::Extended => {}
            FamilyKind::Minimal | FamilyKind::Critical => {
                for m in 1..v {
                    for r in 3..v {
                        for s in 3..v {
                            out.push(if kind == FamilyKind::Minimal { MinD3 { m, r, s } } else { CritD3 { m, r, s } });
                        }
                        if kind == FamilyKind::Minimal {
                            out.extend([MinB { m, r }, MinD { m, r }]);
                        } else {
                            out.extend([CritB { m, r }, CritD4Cycle { m, r }, CritD { m, r }]);
                        }
                    }
                    if kind == FamilyKind::Critical {
                        out.extend([CritB4 { m }, CritD4 { m }]);
                    }
                }
                for r in 3..v {
                    if kind == FamilyKind::Minimal {
                        out.extend([MinBr { r }, MinDr { r }]);
                    } else {
                        out.extend([CritBr { r }, CritDr { r }]);
                    }
                }
            }
        }
        out.retain(|s| s.valid() && s.vertex_count() == v);
        out.sort();
        out.dedup();
        out
    }

    pub fn label(self) -> FamilyLabel {
        FamilyLabel { shape: self }
    }
}

/// Family, printable type name and parameters of a recognized diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyLabel {
    pub shape: Shape,
}

impl FamilyLabel {
    pub fn family(&self) -> FamilyKind {
        self.shape.kind()
    }

    pub fn type_name(&self) -> String {
        self.shape.type_name()
    }

    pub fn params(&self) -> BTreeMap<String, usize> {
        self.shape.params()
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.type_name())
    }
}

impl Serialize for FamilyLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            family: FamilyKind,
            type_name: String,
            params: BTreeMap<String, usize>,
        }
        Repr { family: self.family(), type_name: self.type_name(), params: self.params() }.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CycleRule {
    Trees,
    AllOriented,
    FreeNonOriented,
}

#[derive(Debug, Clone, Copy)]
struct TemplateEdge {
    from: usize,
    to: usize,
    weight: i64,
    fixed: bool,
}

struct Template {
    n: usize,
    edges: Vec<TemplateEdge>,
    rule: CycleRule,
    /// Some vertex of this list must be a source or a sink.
    source_or_sink: Vec<usize>,
}

impl Template {
    fn new(rule: CycleRule) -> Self {
        Template { n: 0, edges: Vec::new(), rule, source_or_sink: Vec::new() }
    }

    fn vertices(&mut self, k: usize) -> Vec<usize> {
        let out = (self.n..self.n + k).collect();
        self.n += k;
        out
    }

    fn vertex(&mut self) -> usize {
        self.vertices(1)[0]
    }

    fn free(&mut self, u: usize, v: usize, weight: i64) {
        self.edges.push(TemplateEdge { from: u, to: v, weight, fixed: false });
    }

    fn arrow(&mut self, u: usize, v: usize, weight: i64) {
        self.edges.push(TemplateEdge { from: u, to: v, weight, fixed: true });
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|e| (e.from, e.to) == (u, v) || (e.from, e.to) == (v, u))
    }

    /// Free simply-laced path with the given weights.
    fn path_weighted(&mut self, vs: &[usize], weights: &[i64]) {
        for (t, w) in vs.windows(2).zip(weights) {
            self.free(t[0], t[1], *w);
        }
    }

    fn path(&mut self, vs: &[usize]) {
        self.path_weighted(vs, &vec![1; vs.len()]);
    }

    /// Close a cycle; pairs already present are left as they are.
    fn cycle(&mut self, vs: &[usize]) {
        for t in 0..vs.len() {
            let (u, v) = (vs[t], vs[(t + 1) % vs.len()]);
            if !self.has(u, v) {
                self.free(u, v, 1);
            }
        }
    }

    /// Fixed oriented cycle `vs[0] -> vs[1] -> ... -> vs[0]`, skipping pairs already present.
    fn oriented_cycle(&mut self, vs: &[usize]) {
        for t in 0..vs.len() {
            let (u, v) = (vs[t], vs[(t + 1) % vs.len()]);
            if !self.has(u, v) {
                self.arrow(u, v, 1);
            }
        }
    }

    fn build(shape: Shape) -> Template {
        let rule = match shape.kind() {
            FamilyKind::Minimal => CycleRule::AllOriented,
            FamilyKind::Critical => CycleRule::FreeNonOriented,
            _ if matches!(shape, AffA(n) if n >= 2) => CycleRule::FreeNonOriented,
            _ => CycleRule::Trees,
        };
        let mut t = Template::new(rule);
        match shape {
            A(n) => {
                let v = t.vertices(n);
                t.path(&v);
            }
            B(n) => {
                let v = t.vertices(n);
                let mut w = vec![1; n];
                w[0] = 2;
                t.path_weighted(&v, &w);
            }
            D(n) => {
                let v = t.vertices(n - 2);
                let l = t.vertices(2);
                t.free(l[0], v[0], 1);
                t.free(l[1], v[0], 1);
                t.path(&v);
            }
            E(n) => {
                let p = t.vertices(n - 1);
                t.path(&p);
                let q = t.vertex();
                t.free(q, p[2], 1);
            }
            F4 => {
                let v = t.vertices(4);
                t.path_weighted(&v, &[1, 2, 1]);
            }
            G2 => {
                let v = t.vertices(2);
                t.free(v[0], v[1], 3);
            }
            AffA(1) => {
                let v = t.vertices(2);
                t.free(v[0], v[1], 4);
            }
            AffA(n) => {
                let v = t.vertices(n + 1);
                t.cycle(&v);
            }
            AffB(n) => {
                let v = t.vertices(n - 1);
                let l = t.vertices(2);
                t.free(l[0], v[0], 1);
                t.free(l[1], v[0], 1);
                let mut w = vec![1; n - 2];
                w[n - 3] = 2;
                t.path_weighted(&v, &w);
            }
            AffC(n) => {
                let v = t.vertices(n + 1);
                let mut w = vec![1; n];
                w[0] = 2;
                w[n - 1] = 2;
                t.path_weighted(&v, &w);
            }
            AffD(n) => {
                let v = t.vertices(n - 3);
                let l = t.vertices(4);
                t.free(l[0], v[0], 1);
                t.free(l[1], v[0], 1);
                t.free(l[2], v[n - 4], 1);
                t.free(l[3], v[n - 4], 1);
                t.path(&v);
            }
            AffE(6) => {
                let p = t.vertices(5);
                t.path(&p);
                let q = t.vertices(2);
                t.free(q[0], p[2], 1);
                t.free(q[0], q[1], 1);
            }
            AffE(n) => {
                let p = t.vertices(n);
                t.path(&p);
                let q = t.vertex();
                t.free(q, p[if n == 7 { 3 } else { 2 }], 1);
            }
            AffF4 => {
                let v = t.vertices(5);
                t.path_weighted(&v, &[1, 2, 1, 1]);
            }
            AffG2 => {
                let v = t.vertices(3);
                t.path_weighted(&v, &[3, 1]);
            }
            MinB { m, r } => {
                let b = t.vertices(r);
                t.cycle(&b);
                let a = t.vertices(m);
                t.free(a[0], b[0], 1);
                t.free(a[0], b[1], 1);
                t.path(&a);
                let c = t.vertex();
                t.free(a[m - 1], c, 2);
            }
            MinBr { r } => {
                let b = t.vertices(r);
                t.cycle(&b);
                let c = t.vertex();
                t.free(b[0], c, 2);
                t.free(c, b[1], 2);
            }
            MinD { m, r } => {
                let l = t.vertices(2);
                let a = t.vertices(m);
                t.free(l[0], a[0], 1);
                t.free(l[1], a[0], 1);
                t.path(&a);
                let c = t.vertices(r);
                t.cycle(&c);
                t.free(a[m - 1], c[0], 1);
                t.free(a[m - 1], c[1], 1);
            }
            MinD3 { m, r, s } => {
                let b = t.vertices(r);
                t.cycle(&b);
                let a = t.vertices(m);
                t.free(a[0], b[0], 1);
                t.free(a[0], b[1], 1);
                t.path(&a);
                let c = t.vertices(s);
                t.cycle(&c);
                t.free(a[m - 1], c[0], 1);
                t.free(a[m - 1], c[1], 1);
            }
            MinDr { r } => {
                let b = t.vertices(r);
                t.cycle(&b);
                let a = t.vertex();
                let c = t.vertex();
                for x in [a, c] {
                    t.free(x, b[0], 1);
                    t.free(x, b[1], 1);
                }
            }
            CritB4 { m } => {
                let b = t.vertices(2);
                let a = t.vertices(m);
                t.arrow(b[1], a[0], 1);
                t.arrow(a[0], b[0], 1);
                t.arrow(b[0], b[1], 4);
                t.path(&a);
                let c = t.vertex();
                t.free(a[m - 1], c, 2);
            }
            CritB { m, r } => {
                let b = t.vertices(r);
                let a = t.vertices(m);
                t.arrow(b[1], b[0], 1);
                t.arrow(b[0], a[0], 1);
                t.arrow(a[0], b[1], 1);
                t.cycle(&b);
                t.path(&a);
                let c = t.vertex();
                t.free(a[m - 1], c, 2);
            }
            CritBr { r } => {
                let b = t.vertices(r);
                let c = t.vertex();
                t.arrow(b[1], b[0], 1);
                t.arrow(b[0], c, 2);
                t.arrow(c, b[1], 2);
                t.cycle(&b);
                t.source_or_sink = b[2..].to_vec();
            }
            CritD4 { m } => {
                let b = t.vertices(2);
                let a = t.vertices(m);
                t.arrow(a[0], b[1], 1);
                t.arrow(b[0], a[0], 1);
                t.arrow(b[1], b[0], 4);
                t.path(&a);
                let c = t.vertices(2);
                t.free(a[m - 1], c[0], 1);
                t.free(a[m - 1], c[1], 1);
            }
            CritD4Cycle { m, r } => {
                let b = t.vertices(2);
                let a = t.vertices(m);
                t.arrow(b[0], a[0], 1);
                t.arrow(a[0], b[1], 1);
                t.arrow(b[1], b[0], 4);
                t.path(&a);
                let c = t.vertices(r);
                t.arrow(a[m - 1], c[0], 1);
                t.arrow(c[1], a[m - 1], 1);
                t.oriented_cycle(&c);
            }
            CritD { m, r } => {
                let b = t.vertices(r);
                let a = t.vertices(m);
                t.arrow(b[0], b[1], 1);
                t.arrow(a[0], b[0], 1);
                t.arrow(b[1], a[0], 1);
                t.cycle(&b);
                t.path(&a);
                let c = t.vertices(2);
                t.free(a[m - 1], c[0], 1);
                t.free(a[m - 1], c[1], 1);
            }
            CritD3 { m, r, s } => {
                let b = t.vertices(r);
                let a = t.vertices(m);
                t.arrow(b[0], b[1], 1);
                t.arrow(b[1], a[0], 1);
                t.arrow(a[0], b[0], 1);
                t.cycle(&b);
                t.path(&a);
                let c = t.vertices(s);
                t.arrow(a[m - 1], c[0], 1);
                t.arrow(c[1], a[m - 1], 1);
                t.oriented_cycle(&c);
            }
            CritDr { r } => {
                let b = t.vertices(r);
                let a = t.vertex();
                let c = t.vertex();
                t.arrow(b[0], b[1], 1);
                t.arrow(b[1], c, 1);
                t.arrow(c, b[0], 1);
                t.arrow(a, b[0], 1);
                t.arrow(b[1], a, 1);
                t.cycle(&b);
                t.source_or_sink = b[2..].to_vec();
            }
        }
        t
    }

    fn accepts(&self, g: &Diagram, free_pairs: &BTreeSet<(usize, usize)>) -> bool {
        let cycles_ok = match self.rule {
            CycleRule::Trees => true,
            CycleRule::AllOriented => g.chordless_cycles().iter().all(|c| c.oriented),
            CycleRule::FreeNonOriented => g.chordless_cycles().iter().all(|c| {
                let k = c.vertices.len();
                let touches_free = (0..k).any(|t| {
                    let (u, v) = (c.vertices[t], c.vertices[(t + 1) % k]);
                    free_pairs.contains(&(u.min(v), u.max(v)))
                });
                !touches_free || !c.oriented
            }),
        };
        let sink_ok = self.source_or_sink.is_empty()
            || self.source_or_sink.iter().any(|&v| {
                let out = (0..g.n()).filter(|&u| g.has_arrow(v, u)).count();
                let inc = (0..g.n()).filter(|&u| g.has_arrow(u, v)).count();
                out == 0 || inc == 0
            });
        cycles_ok && sink_ok
    }

    fn members(&self) -> Vec<(CanonicalKey, Diagram)> {
        let free: Vec<usize> = (0..self.edges.len()).filter(|&i| !self.edges[i].fixed).collect();
        let free_pairs: BTreeSet<(usize, usize)> =
            free.iter().map(|&i| (self.edges[i].from.min(self.edges[i].to), self.edges[i].from.max(self.edges[i].to))).collect();
        let mut seen = BTreeMap::new();
        for mask in 0u64..1 << free.len() {
            let edges = self.edges.iter().enumerate().map(|(i, e)| {
                let flip = free.iter().position(|&f| f == i).is_some_and(|p| mask >> p & 1 == 1);
                let (from, to) = if flip { (e.to, e.from) } else { (e.from, e.to) };
                crate::diagram::Edge { from, to, weight: e.weight }
            });
            let g = Diagram::new(self.n, edges).expect("family template is a valid diagram");
            if self.accepts(&g, &free_pairs) {
                let (key, perm) = canonical_form(&g);
                seen.entry(key).or_insert_with(|| g.permuted(&perm));
            }
        }
        seen.into_iter().collect()
    }
}

/// All members of a family type up to isomorphism, in canonical labeling, sorted by key.
pub fn generate_family(shape: Shape) -> Result<Vec<Diagram>> {
    if !shape.valid() {
        return Err(Error::BadParams(format!("parameters out of range for {shape:?}")));
    }
    Ok(family_members(shape).into_iter().map(|(_, g)| g).collect())
}

pub(crate) fn family_members(shape: Shape) -> Vec<(CanonicalKey, Diagram)> {
    Template::build(shape).members()
}
