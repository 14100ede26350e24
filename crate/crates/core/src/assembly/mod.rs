//! Witness algebra on ℤ and the iterative construction.

mod check;
mod evidence;
mod iterate;
mod periodic;
mod piece;
mod two_pieces;
mod witness;

pub use check::{check_evidence, check_in_difference_set, check_witness, has_odd_cycle, Check, EvidenceView};
pub use evidence::{ChromaticEvidence, LogEntry};
pub use iterate::{kriz_iterate, kriz_iterate_in_difference_set, paper_base_case, IterationResult, StageSummary};
pub use periodic::{best_window, threshold_m0, PeriodicSet};
pub use piece::{find_piece, finite_piece, piece_in_difference_set, shortest_odd_cycle, Accept, Piece};
pub use two_pieces::{decompositions, dilate, l_threshold, quotient, two_pieces, union, TwoPieces};
pub use witness::{smallest_witness, witness_from_set, NonrecurrenceWitness, WitnessFailure};

use crate::eset::ESpec;

/// S with evidence that χ(Cay S) > `chromatic_claim` and a witness of its
/// δ-nonrecurrence; with `e` set, also modulus·S ⊆ E − E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCertificate {
    pub s: Vec<u64>,
    pub chromatic_claim: usize,
    pub evidence: ChromaticEvidence,
    pub witness: NonrecurrenceWitness,
    pub e: Option<ESpec>,
    pub modulus: u64,
    pub log: Vec<LogEntry>,
}

impl RecurrenceCertificate {
    /// Every check, from the raw sets only; the log is not consulted.
    pub fn verify(&self) -> Vec<Check> {
        let w = &self.witness;
        let mut out = check_witness(&w.b, w.m, &self.s, &w.delta);
        let mut sorted = self.s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        out.push(Check {
            name: "S-sorted-distinct".into(),
            ok: sorted == self.s && w.s == self.s,
            detail: String::new(),
        });
        out.extend(self.evidence.check(&self.s));
        out.push(Check {
            name: "χ>k".into(),
            ok: self.evidence.chi_lower > self.chromatic_claim,
            detail: format!("bound {} claim {}", self.evidence.chi_lower, self.chromatic_claim),
        });
        if let Some(e) = &self.e {
            let scaled: Vec<u64> = self.s.iter().map(|&x| x.saturating_mul(self.modulus)).collect();
            out.push(check_in_difference_set(&scaled, e));
        }
        out
    }
}
