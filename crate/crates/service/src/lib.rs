//! Session-oriented JSON API over the game engine, for playing the
//! open-open game interactively against engine strategies.

pub mod api;
pub mod error;
pub mod manager;
pub mod session;

pub use api::{router, serve};
pub use error::ApiError;
pub use manager::SessionManager;
pub use session::{CreateSession, MovePayload, Role, Session, Status};
