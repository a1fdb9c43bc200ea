use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Optional deadline plus a shared abort flag for long searches.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    abort: Arc<AtomicBool>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(limit: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + limit),
            abort: Arc::default(),
        }
    }

    pub fn abort(&self) {
        self.abort.store(true, Ordering::Relaxed);
    }

    pub fn check(&self) -> Result<()> {
        if self.abort.load(Ordering::Relaxed) {
            return Err(Error::Timeout);
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abort_is_shared_between_clones() {
        let b = Budget::unlimited();
        let c = b.clone();
        assert!(c.check().is_ok());
        b.abort();
        assert_eq!(c.check(), Err(Error::Timeout));
    }

    #[test]
    fn expired_deadline() {
        let b = Budget::with_timeout(Duration::ZERO);
        assert_eq!(b.check(), Err(Error::Timeout));
    }
}
