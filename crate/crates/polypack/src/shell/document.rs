use serde::{Deserialize, Serialize};

use crate::apollonian::Cluster;
use crate::lorentz::{geometry_from_ball, Ball, BallGeometry, LVector};
use crate::numeric::{Field, Scalar};
use crate::packing::BallArrangement;
use crate::polytope::{FaceLattice, Solid};

use super::ShellError;

/// A float, or an exact value written `a/b+c/d√m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Exact(String),
}

impl Num {
    pub fn from_scalar<S: Scalar>(x: &S) -> Num {
        if S::EXACT {
            Num::Exact(x.to_string())
        } else {
            Num::Float(x.to_f64())
        }
    }

    pub fn to_scalar<S: Scalar>(&self) -> Result<S, ShellError> {
        Ok(match self {
            Num::Float(x) => S::from_f64(*x)?,
            Num::Exact(s) => S::parse(s)?,
        })
    }

    pub fn to_f64(&self) -> Result<f64, ShellError> {
        match self {
            Num::Float(x) => Ok(*x),
            Num::Exact(s) => exact_to_f64(s),
        }
    }
}

/// Floats of exact strings in any of the hosted fields.
fn exact_to_f64(s: &str) -> Result<f64, ShellError> {
    let m = s.split(['√']).nth(1).unwrap_or("2");
    let field = Field::Quadratic(m.parse().map_err(|_| ShellError::Input(format!("bad number {s}")))?);
    with_field!(field, S => Ok(S::parse(s)?.to_f64()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpaceDoc {
    pub normal: Vec<Num>,
    pub offset: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub inversive: Vec<Num>,
    pub curvature: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspace: Option<HalfSpaceDoc>,
    pub depth: usize,
    pub word: Vec<String>,
    pub orbit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedDoc {
    /// `projection`, `dual` or `cluster`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centering: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

/// A serialized ball arrangement or cluster.
///
/// When `lattice` is present it lists the faces of ranks 1 and up of the
/// polytope whose vertices are the first entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingDocument {
    pub dimension: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solid: Option<String>,
    pub seed: SeedDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<Vec<usize>>>>,
    pub entries: Vec<EntryDoc>,
}

fn entry<S: Scalar>(b: &Ball<S>, depth: usize, word: Vec<String>, orbit: usize) -> EntryDoc {
    let nums = |v: &[S]| v.iter().map(Num::from_scalar).collect::<Vec<_>>();
    let (center, radius, halfspace) = match geometry_from_ball(b) {
        BallGeometry::Disk { center, radius, .. } => (Some(nums(&center)), Some(Num::from_scalar(&radius)), None),
        BallGeometry::HalfSpace { normal, offset } => {
            (None, None, Some(HalfSpaceDoc { normal: nums(&normal), offset: Num::from_scalar(&offset) }))
        }
    };
    EntryDoc {
        inversive: nums(b.coords()),
        curvature: Num::from_scalar(&b.curvature()),
        center,
        radius,
        halfspace,
        depth,
        word,
        orbit,
    }
}

fn lattice_doc(l: &FaceLattice) -> Vec<Vec<Vec<usize>>> {
    (1..l.dim()).map(|k| l.faces(k).map(<[_]>::to_vec).unwrap_or_default()).collect()
}

impl PackingDocument {
    pub fn from_arrangement<S: Scalar>(a: &BallArrangement<S>, seed: SeedDoc) -> PackingDocument {
        PackingDocument {
            dimension: a.dim(),
            mode: S::field().to_string(),
            solid: a.solid().map(|s| s.to_string()),
            seed,
            lattice: a.lattice().map(lattice_doc),
            entries: a.balls().iter().map(|b| entry(b, 0, Vec::new(), 0)).collect(),
        }
    }

    pub fn from_cluster<S: Scalar>(c: &Cluster<S>, solid: Option<Solid>, seed: SeedDoc) -> PackingDocument {
        PackingDocument {
            dimension: c.seed().dim(),
            mode: S::field().to_string(),
            solid: solid.map(|s| s.to_string()),
            seed,
            lattice: c.seed().lattice().map(lattice_doc),
            entries: c
                .entries()
                .iter()
                .enumerate()
                .map(|(i, e)| entry(&e.ball, e.depth, c.word_names(i).into_iter().map(String::from).collect(), e.orbit))
                .collect(),
        }
    }

    pub fn field(&self) -> Result<Field, ShellError> {
        self.mode.parse().map_err(|_| ShellError::Input(format!("unknown mode {}", self.mode)))
    }

    pub fn solid(&self) -> Result<Option<Solid>, ShellError> {
        self.solid.as_deref().map(str::parse).transpose().map_err(ShellError::from)
    }

    pub fn balls<S: Scalar>(&self) -> Result<Vec<Ball<S>>, ShellError> {
        self.entries
            .iter()
            .map(|e| {
                let v = e.inversive.iter().map(Num::to_scalar).collect::<Result<Vec<S>, _>>()?;
                if v.len() != self.dimension + 2 {
                    return Err(ShellError::Input(format!("entry has {} coordinates", v.len())));
                }
                Ok(Ball::new(LVector::new(v))?)
            })
            .collect()
    }

    /// The labelled polytope arrangement held in the first entries.
    pub fn arrangement<S: Scalar>(&self) -> Result<Option<BallArrangement<S>>, ShellError> {
        let Some(upper) = &self.lattice else { return Ok(None) };
        let n = upper.first().map(|e| e.iter().flatten().max().map_or(0, |m| m + 1)).unwrap_or(0);
        if n == 0 || n > self.entries.len() {
            return Err(ShellError::Input("lattice does not match the entries".into()));
        }
        let balls = self.balls::<S>()?.into_iter().take(n).collect();
        Ok(Some(BallArrangement::with_lattice(balls, FaceLattice::new(n, upper.clone()), self.solid()?)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<PackingDocument, ShellError> {
        serde_json::from_str(s).map_err(|e| ShellError::Input(format!("bad document: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apollonian::cluster_from_curvatures;
    use crate::numeric::Q2;
    use crate::packing::{centered_projection, project};
    use crate::polytope::{regular_edge_scribed, CUBE, TETRAHEDRON};

    fn seed() -> SeedDoc {
        SeedDoc { kind: "projection".into(), centering: None, initial: None, depth: None }
    }

    #[test]
    fn float_round_trip_is_bit_exact() {
        let a = centered_projection(CUBE, 1).unwrap();
        let doc = PackingDocument::from_arrangement(&a, seed());
        let back = PackingDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let balls: Vec<Ball<f64>> = back.balls().unwrap();
        for (x, y) in balls.iter().zip(a.balls()) {
            for (u, v) in x.coords().iter().zip(y.coords()) {
                assert_eq!(u.to_bits(), v.to_bits());
            }
        }
    }

    #[test]
    fn exact_round_trip() {
        let a = project(&regular_edge_scribed::<Q2>(TETRAHEDRON).unwrap()).unwrap();
        let doc = PackingDocument::from_arrangement(&a, seed());
        assert!(doc.to_json().contains("√2"));
        let back = PackingDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.balls::<Q2>().unwrap(), a.balls().to_vec());
        let arr = back.arrangement::<Q2>().unwrap().unwrap();
        assert_eq!(arr.lattice(), a.lattice());
        assert_eq!(arr.solid(), Some(TETRAHEDRON));
    }

    #[test]
    fn cluster_documents_carry_words() {
        let c = cluster_from_curvatures(TETRAHEDRON, &[Q2::from_int(-3), Q2::from_int(5), Q2::from_int(8)], 2).unwrap();
        let doc = PackingDocument::from_cluster(&c, Some(TETRAHEDRON), seed());
        assert_eq!(doc.entries.len(), c.len());
        assert!(doc.entries[..4].iter().all(|e| e.word.is_empty()));
        assert!(doc.entries[4..].iter().all(|e| !e.word.is_empty()));
        assert!(doc.entries[..4].iter().any(|e| e.curvature == Num::Exact("-3".into())));
        assert_eq!(PackingDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
