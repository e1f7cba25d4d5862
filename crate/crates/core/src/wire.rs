//! JSON wire format. Every scalar is written as its coefficient array
//! `[c_0, ..., c_(m-1)]` (canonical representatives in `[0, p^n)`); on input
//! a plain integer is also accepted. Matrices are lists of rows.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::crystal::ConnectionData;
use crate::error::{Error, Result};
use crate::lattice::WittLattice;
use crate::lift::{Branch, Claim, LiftingCertificate};
use crate::matrix::{Matrix, Vector};
use crate::period::PeriodFrame;
use crate::ring::{PadicScalar, RingContext};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDto {
    pub p: u64,
    pub n: u32,
    #[serde(default = "one")]
    pub m: usize,
    /// Monic modulus `[c_0, ..., c_(m-1), 1]`; defaults to the first
    /// irreducible polynomial of degree `m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
}

fn one() -> usize {
    1
}

impl ContextDto {
    pub fn build(&self) -> Result<Arc<RingContext>> {
        match &self.modulus {
            Some(f) => RingContext::new(self.p, self.n, self.m, f.clone()),
            None => RingContext::with_degree(self.p, self.n, self.m),
        }
    }

    pub fn of(ctx: &RingContext) -> Self {
        ContextDto {
            p: ctx.p(),
            n: ctx.n(),
            m: ctx.m(),
            modulus: Some(ctx.modulus().iter().map(|&c| c as i64).collect()),
        }
    }

    /// Parses `p,n,m[,c_0:c_1:...:1]`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidContext(format!("cannot parse context {s:?}; expected p,n,m[,c0:c1:...:1]"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(bad());
        }
        let p = parts[0].parse().map_err(|_| bad())?;
        let n = parts[1].parse().map_err(|_| bad())?;
        let m = parts[2].parse().map_err(|_| bad())?;
        let modulus = match parts.get(3) {
            Some(f) => Some(
                f.split(':')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad())?,
            ),
            None => None,
        };
        Ok(ContextDto { p, n, m, modulus })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDto {
    Int(i64),
    Coeffs(Vec<i64>),
}

pub type VectorDto = Vec<ScalarDto>;
pub type MatrixDto = Vec<Vec<ScalarDto>>;

pub fn scalar_in(ctx: &Arc<RingContext>, s: &ScalarDto) -> Result<PadicScalar> {
    match s {
        ScalarDto::Int(v) => Ok(PadicScalar::from_int(ctx, *v)),
        ScalarDto::Coeffs(c) => PadicScalar::from_coeffs(ctx, c),
    }
}

pub fn vector_in(ctx: &Arc<RingContext>, v: &[ScalarDto]) -> Result<Vector> {
    v.iter().map(|s| scalar_in(ctx, s)).collect()
}

pub fn matrix_in(ctx: &Arc<RingContext>, rows: &[Vec<ScalarDto>]) -> Result<Matrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::DimensionMismatch("ragged matrix rows".into()));
    }
    let entries = rows
        .iter()
        .flatten()
        .map(|s| scalar_in(ctx, s))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_entries(ctx, r, c, entries)
}

pub fn vectors_in(ctx: &Arc<RingContext>, vs: &[VectorDto]) -> Result<Vec<Vector>> {
    vs.iter().map(|v| vector_in(ctx, v)).collect()
}

pub fn scalar_out(s: &PadicScalar) -> ScalarDto {
    ScalarDto::Coeffs(s.coeffs().iter().map(|&c| c as i64).collect())
}

pub fn vector_out(v: &[PadicScalar]) -> VectorDto {
    v.iter().map(scalar_out).collect()
}

pub fn vectors_out(vs: &[Vector]) -> Vec<VectorDto> {
    vs.iter().map(|v| vector_out(v)).collect()
}

pub fn matrix_out(m: &Matrix) -> MatrixDto {
    (0..m.rows()).map(|i| vector_out(&m.row(i))).collect()
}

/// `"k3"` for the canonical rank-22 frame, or an explicit Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameDto {
    Named(String),
    Gram { gram: MatrixDto },
}

impl FrameDto {
    pub fn build(&self, ctx: &Arc<RingContext>) -> Result<PeriodFrame> {
        match self {
            FrameDto::Named(name) if name == "k3" => PeriodFrame::k3(ctx),
            FrameDto::Named(name) => Err(Error::InvalidFrame(format!("unknown frame {name:?}"))),
            FrameDto::Gram { gram } => PeriodFrame::new(WittLattice::new(matrix_in(ctx, gram)?)?),
        }
    }

    pub fn of(frame: &PeriodFrame) -> Self {
        FrameDto::Gram {
            gram: matrix_out(frame.lattice().gram()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionDto {
    pub frame: FrameDto,
    pub matrices: Vec<MatrixDto>,
}

impl ConnectionDto {
    pub fn build(&self, ctx: &Arc<RingContext>) -> Result<ConnectionData> {
        let frame = self.frame.build(ctx)?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| matrix_in(ctx, m))
            .collect::<Result<Vec<_>>>()?;
        ConnectionData::new(frame, matrices)
    }

    pub fn of(conn: &ConnectionData) -> Self {
        ConnectionDto {
            frame: FrameDto::of(conn.frame()),
            matrices: conn.matrices().iter().map(matrix_out).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ClaimDto {
    Orthogonal { label: String, vectors: Vec<VectorDto> },
    Span { label: String, basis: Vec<VectorDto> },
    Valuation { label: String, value: ScalarDto, min: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub ctx: ContextDto,
    pub branch: String,
    pub gram: MatrixDto,
    pub isometry: MatrixDto,
    pub order: u64,
    pub generator: VectorDto,
    pub eigenvalue: ScalarDto,
    pub hodge_line: VectorDto,
    pub claims: Vec<ClaimDto>,
}

impl CertificateDto {
    pub fn of(cert: &LiftingCertificate) -> Self {
        CertificateDto {
            ctx: ContextDto::of(cert.lattice.ctx()),
            branch: cert.branch.name().to_string(),
            gram: matrix_out(cert.lattice.gram()),
            isometry: matrix_out(&cert.isometry),
            order: cert.order,
            generator: vector_out(&cert.generator),
            eigenvalue: scalar_out(&cert.eigenvalue),
            hodge_line: vector_out(&cert.hodge_line),
            claims: cert
                .claims
                .iter()
                .map(|c| match c {
                    Claim::OrthogonalTo { label, vectors } => ClaimDto::Orthogonal {
                        label: label.clone(),
                        vectors: vectors_out(vectors),
                    },
                    Claim::InSpan { label, basis } => ClaimDto::Span {
                        label: label.clone(),
                        basis: vectors_out(basis),
                    },
                    Claim::Valuation { label, value, min } => ClaimDto::Valuation {
                        label: label.clone(),
                        value: scalar_out(value),
                        min: *min,
                    },
                })
                .collect(),
        }
    }

    /// Rebuilds the certificate. The lattice must be a perfect-shape
    /// symmetric matrix; nothing else is validated here, that is the job of
    /// verification.
    pub fn build(&self) -> Result<LiftingCertificate> {
        let ctx = self.ctx.build()?;
        let branch = Branch::from_name(&self.branch)
            .ok_or_else(|| Error::InvalidInput(format!("unknown branch {:?}", self.branch)))?;
        let claims = self
            .claims
            .iter()
            .map(|c| {
                Ok(match c {
                    ClaimDto::Orthogonal { label, vectors } => Claim::OrthogonalTo {
                        label: label.clone(),
                        vectors: vectors_in(&ctx, vectors)?,
                    },
                    ClaimDto::Span { label, basis } => Claim::InSpan {
                        label: label.clone(),
                        basis: vectors_in(&ctx, basis)?,
                    },
                    ClaimDto::Valuation { label, value, min } => Claim::Valuation {
                        label: label.clone(),
                        value: scalar_in(&ctx, value)?,
                        min: *min,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LiftingCertificate {
            branch,
            lattice: WittLattice::new(matrix_in(&ctx, &self.gram)?)?,
            isometry: matrix_in(&ctx, &self.isometry)?,
            order: self.order,
            generator: vector_in(&ctx, &self.generator)?,
            eigenvalue: scalar_in(&ctx, &self.eigenvalue)?,
            hodge_line: vector_in(&ctx, &self.hodge_line)?,
            claims,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_strings() {
        let c = ContextDto::parse("5,3,1").unwrap();
        assert_eq!((c.p, c.n, c.m, c.modulus), (5, 3, 1, None));
        let c = ContextDto::parse("3,2,2,1:0:1").unwrap();
        assert_eq!(c.modulus, Some(vec![1, 0, 1]));
        assert!(c.build().is_ok());
        assert!(ContextDto::parse("3,2").is_err());
    }

    #[test]
    fn scalars_accept_ints_and_arrays() {
        let ctx = RingContext::with_degree(3, 2, 2).unwrap();
        let s: ScalarDto = serde_json::from_str("[1, 2]").unwrap();
        let t: ScalarDto = serde_json::from_str("-1").unwrap();
        assert_eq!(
            scalar_in(&ctx, &s).unwrap(),
            PadicScalar::from_coeffs(&ctx, &[1, 2]).unwrap()
        );
        assert_eq!(scalar_out(&scalar_in(&ctx, &t).unwrap()), ScalarDto::Coeffs(vec![8, 0]));
    }
}
