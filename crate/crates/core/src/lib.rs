//! Exact combinatorics, realizations and I-invariant bookkeeping for line
//! arrangements, with the extended MacLane and Rybnikov constructions built in.

pub mod automorphisms;
pub mod catalog;
pub mod characters;
pub mod combinatorics;
pub mod cyclotomic;
pub mod gluing;
pub mod invariant;
pub mod io;
pub mod realization;
mod search;

pub use characters::Character;
pub use combinatorics::{Combinatorics, Cycle, IncidenceGraph, Vertex};
pub use cyclotomic::CycloNum;
pub use gluing::GluingSpec;
pub use invariant::{Ledger, LedgerEntry, Verdict, VerdictKind};
pub use realization::{Arrangement, ProjLine, ProjMap, ProjPoint};
