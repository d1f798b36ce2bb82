//! The finite-family open-open game: moves, legality, transcripts and
//! bounded density adjudication.

mod adjudicate;
mod engine;
mod family;
mod player;
mod test_family;
mod transcript;

pub use adjudicate::{
    adjudicate, adjudicate_all, coverage, last_meeting_round, replay, CertificateStatus, DensityCertificate,
    MeetEvidence,
};
pub use engine::{round_rng, run_game, Game, Position, Strategy};
pub use family::{first_unrefined, legal_reply, MoveFamily};
pub use player::Player;
pub use test_family::{cylinders_upto, subsets_of_size, TestFamily};
pub use transcript::{Transcript, TRANSCRIPT_VERSION};
