//! Machine-checkable certificates: a freeness attestation plus an exact
//! independence number, combined into the claim that every hypergraph on
//! more vertices must contain a forbidden Berge cycle or a larger
//! independent set. Verification re-executes both evidences from the
//! inline edge list; the digest is a tamper check only.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::berge::{self, ForbiddenFamily, FreenessOutcome, WitnessJson};
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::indep::{alpha_exact, AlphaResult};
use crate::textio::serialize_hypergraph;

/// 64-bit-truncated SHA-256 of the canonical serialization, as hex.
pub fn digest(h: &Hypergraph) -> String {
    let bytes = Sha256::digest(serialize_hypergraph(h).as_bytes());
    bytes[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreenessEvidence {
    /// "free", "witness" or "inconclusive".
    pub status: String,
    pub budget: u64,
    pub nodes: u64,
    /// Cycle length at which the search gave out, for inconclusive runs.
    pub exhausted_at: Option<usize>,
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlphaEvidence {
    pub exact: bool,
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<usize>,
    pub budget: u64,
    pub nodes: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Claim {
    /// t = alpha + 1: the smallest independent-set size the hypergraph
    /// does not reach.
    pub t: usize,
    /// The Ramsey number for (t, family) exceeds this vertex count.
    pub n_exceeds: usize,
    pub statement: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub digest: String,
    pub r: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    pub family: ForbiddenFamily,
    pub freeness: FreenessEvidence,
    pub alpha: AlphaEvidence,
    pub claim: Option<Claim>,
    pub seeds: Vec<u64>,
}

fn family_label(fam: &ForbiddenFamily) -> String {
    let lengths: Vec<String> = fam.lengths.iter().map(|k| k.to_string()).collect();
    format!(
        "{} Berge cycles of length {{{}}} in {}-graphs",
        fam.mode,
        lengths.join(","),
        fam.r
    )
}

/// Runs the exhaustive detector and the exact solver and assembles a
/// certificate. A claim is only emitted when the hypergraph is proven free
/// and alpha is exact; budget exhaustion yields an inconclusive
/// certificate, never a claim.
pub fn certify(
    h: &Hypergraph,
    family: &ForbiddenFamily,
    detect_budget: u64,
    alpha_budget: u64,
) -> Result<Certificate> {
    let freeness = match berge::is_free(h, family, detect_budget)? {
        FreenessOutcome::Free { nodes } => FreenessEvidence {
            status: "free".into(),
            budget: detect_budget,
            nodes,
            exhausted_at: None,
            witness: None,
        },
        FreenessOutcome::Witness { witness, .. } => FreenessEvidence {
            status: "witness".into(),
            budget: detect_budget,
            nodes: 0,
            exhausted_at: None,
            witness: Some(witness.to_json(h, family.mode)),
        },
        FreenessOutcome::Exhausted { k, nodes } => FreenessEvidence {
            status: "inconclusive".into(),
            budget: detect_budget,
            nodes,
            exhausted_at: Some(k),
            witness: None,
        },
    };
    let alpha: AlphaResult = alpha_exact(h, alpha_budget);
    let claim = if freeness.status == "free" && alpha.exact {
        let t = alpha.lower + 1;
        Some(Claim {
            t,
            n_exceeds: h.n(),
            statement: format!(
                "R({t}; {}) > {}",
                family_label(family),
                h.n()
            ),
        })
    } else {
        None
    };
    Ok(Certificate {
        version: env!("CARGO_PKG_VERSION").into(),
        digest: digest(h),
        r: h.r(),
        n: h.n(),
        edges: h.edges().to_vec(),
        family: family.clone(),
        freeness,
        alpha: AlphaEvidence {
            exact: alpha.exact,
            lower: alpha.lower,
            upper: alpha.upper,
            witness: alpha.witness,
            budget: alpha_budget,
            nodes: alpha.nodes,
        },
        claim,
    seeds: Vec::new(),
    })
}

/// Per-check verification outcome; `ok` is the conjunction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub structure_ok: bool,
    pub digest_ok: bool,
    pub freeness_ok: bool,
    pub alpha_ok: bool,
    pub claim_ok: bool,
    pub ok: bool,
    pub detail: Vec<String>,
}

impl VerifyReport {
    fn failed(detail: String) -> Self {
        Self {
            structure_ok: false,
            digest_ok: false,
            freeness_ok: false,
            alpha_ok: false,
            claim_ok: false,
            ok: false,
            detail: vec![detail],
        }
    }
}

/// Independent re-execution of both evidences from the inline edge list.
/// Each failing check is reported distinctly.
pub fn verify(cert: &Certificate) -> VerifyReport {
    let mut detail = Vec::new();
    let h = match Hypergraph::new(cert.r, cert.n, cert.edges.iter().cloned()) {
        Ok(h) => h,
        Err(e) => return VerifyReport::failed(format!("inline edge list invalid: {e}")),
    };

    let digest_ok = digest(&h) == cert.digest;
    if !digest_ok {
        detail.push("digest mismatch".into());
    }

    let freeness_ok = match berge::is_free(&h, &cert.family, cert.freeness.budget) {
        Err(e) => {
            detail.push(format!("freeness re-run failed: {e}"));
            false
        }
        Ok(outcome) => {
            let status = match &outcome {
                FreenessOutcome::Free { .. } => "free",
                FreenessOutcome::Witness { .. } => "witness",
                FreenessOutcome::Exhausted { .. } => "inconclusive",
            };
            let mut ok = status == cert.freeness.status;
            if !ok {
                detail.push(format!(
                    "freeness status {} does not reproduce (got {status})",
                    cert.freeness.status
                ));
            }
            if ok && status == "witness" {
                // The recorded witness itself must check out.
                match cert.freeness.witness.as_ref() {
                    None => {
                        detail.push("witness status without a witness".into());
                        ok = false;
                    }
                    Some(wj) => match berge::BergeWitness::from_json(wj, &h) {
                        Err(e) => {
                            detail.push(format!("recorded witness does not bind: {e}"));
                            ok = false;
                        }
                        Ok(w) => match berge::verify_witness(&h, &w, cert.family.mode) {
                            Ok(true) => {}
                            _ => {
                                detail.push("recorded witness fails verification".into());
                                ok = false;
                            }
                        },
                    },
                }
            }
            ok
        }
    };

    let re_alpha = alpha_exact(&h, cert.alpha.budget);
    let mut alpha_ok = re_alpha.exact == cert.alpha.exact
        && re_alpha.lower == cert.alpha.lower
        && re_alpha.upper == cert.alpha.upper;
    if !alpha_ok {
        detail.push(format!(
            "alpha evidence does not reproduce: recorded {}..{} (exact {}), got {}..{} (exact {})",
            cert.alpha.lower,
            cert.alpha.upper,
            cert.alpha.exact,
            re_alpha.lower,
            re_alpha.upper,
            re_alpha.exact
        ));
    }
    if cert.alpha.witness.len() != cert.alpha.lower || !h.is_independent(&cert.alpha.witness) {
        detail.push("alpha witness invalid".into());
        alpha_ok = false;
    }

    let claim_ok = match &cert.claim {
        None => {
            let should_claim = cert.freeness.status == "free" && cert.alpha.exact;
            if should_claim {
                detail.push("claim missing despite complete evidence".into());
            }
            !should_claim
        }
        Some(c) => {
            let mut ok = cert.freeness.status == "free" && cert.alpha.exact;
            if !ok {
                detail.push("claim present without complete evidence".into());
            }
            if c.t != cert.alpha.lower + 1 {
                detail.push(format!("claim t = {} is not alpha + 1", c.t));
                ok = false;
            }
            if c.n_exceeds != cert.n {
                detail.push("claim vertex count differs from the hypergraph".into());
                ok = false;
            }
            ok
        }
    };

    let structure_ok = true;
    let ok = structure_ok && digest_ok && freeness_ok && alpha_ok && claim_ok;
    VerifyReport {
        structure_ok,
        digest_ok,
        freeness_ok,
        alpha_ok,
        claim_ok,
        ok,
        detail,
    }
}
