use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use serde_json::{json, Value};

use openopen_core::registry::StrategyRegistry;
use openopen_core::spaces::region_to_json;

use crate::error::ApiError;
use crate::session::{CreateSession, MovePayload, Session};

/// Space descriptor forms accepted by `create`.
pub const SPACE_FORMS: [(&str, &str); 6] = [
    ("cantor", "Cantor cube D^ω"),
    ("cantor:<bound>", "Cantor cube on coordinates below <bound>"),
    ("exp(cantor)", "Vietoris hyperspace of the Cantor cube"),
    ("product(<a>,<b>)", "product of two spaces"),
    ("sum(<n>,<space>)", "disjoint sum of n copies"),
    ("finite:<path>", "finite space from a lattice file"),
];

/// Session table. Each session sits behind its own lock, so requests to one
/// session are serialized while distinct sessions proceed independently.
pub struct SessionManager {
    registry: StrategyRegistry,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
}

impl Default for SessionManager {
    fn default() -> Self {
        Self::new(StrategyRegistry::with_defaults())
    }
}

impl SessionManager {
    pub fn new(registry: StrategyRegistry) -> Self {
        SessionManager {
            registry,
            sessions: RwLock::new(HashMap::new()),
            next_id: AtomicU64::new(1),
        }
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))
    }

    fn with<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let s = self.get(id)?;
        let mut guard = s.lock().unwrap_or_else(|p| p.into_inner());
        f(&mut guard)
    }

    pub fn create(&self, req: CreateSession) -> Result<Value, ApiError> {
        let id = format!("s{}", self.next_id.fetch_add(1, Ordering::Relaxed));
        let session = Session::create(id.clone(), req, &self.registry)?;
        let state = session.state()?;
        self.sessions
            .write()
            .expect("session table poisoned")
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(state)
    }

    pub fn state(&self, id: &str) -> Result<Value, ApiError> {
        self.with(id, |s| s.state())
    }

    /// Applies the move. A rejected move leaves the session unchanged; an
    /// engine failure after a legal move is reported in the state.
    pub fn apply_move(&self, id: &str, payload: &MovePayload) -> Result<Value, ApiError> {
        self.with(id, |s| {
            s.apply_move(payload)?;
            s.state()
        })
    }

    pub fn hint(&self, id: &str) -> Result<Value, ApiError> {
        self.with(id, |s| {
            let sets = s.hint()?;
            Ok(json!({ "sets": sets.iter().map(region_to_json).collect::<Vec<_>>() }))
        })
    }

    pub fn preview(&self, id: &str, payload: &MovePayload) -> Result<Value, ApiError> {
        self.with(id, |s| s.preview(payload))
    }

    pub fn transcript(&self, id: &str) -> Result<Value, ApiError> {
        self.with(id, |s| Ok(s.state()?["transcript"].clone()))
    }

    pub fn delete(&self, id: &str) -> Result<(), ApiError> {
        self.sessions
            .write()
            .expect("session table poisoned")
            .remove(id)
            .map(|_| ())
            .ok_or_else(|| ApiError::not_found(id))
    }

    pub fn strategies(&self) -> Value {
        json!(self.registry.list())
    }

    pub fn spaces(&self) -> Value {
        Value::Array(
            SPACE_FORMS
                .iter()
                .map(|(d, about)| json!({ "descriptor": d, "description": about }))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
