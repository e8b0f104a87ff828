use std::str::FromStr;

use arena_core::harness::wire::{StdioTransport, Transport, WireAgent, WireMessage};
use arena_core::harness::{Agent, AgentError, IdleAgent, RandomAgent};

use crate::error::{config, CliError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AgentSpec {
    Idle,
    Random,
    Interactive,
    /// Child process speaking the wire protocol on stdin/stdout.
    Command(String),
    /// HTTP endpoint receiving each wire message as a POST.
    Http(String),
}

impl AgentSpec {
    /// Built-in agents are stateless per episode and can run in parallel.
    pub fn is_builtin(&self) -> bool {
        matches!(self, AgentSpec::Idle | AgentSpec::Random)
    }
}

impl FromStr for AgentSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "idle" => Ok(AgentSpec::Idle),
            "random" => Ok(AgentSpec::Random),
            "interactive" => Ok(AgentSpec::Interactive),
            _ => match s.strip_prefix("wire:") {
                Some(url) if url.starts_with("http://") => Ok(AgentSpec::Http(url.to_string())),
                Some(cmd) if !cmd.trim().is_empty() => Ok(AgentSpec::Command(cmd.to_string())),
                _ => Err(config(format!("unknown agent {s:?}; expected idle, random, interactive or wire:<command|url>"))),
            },
        }
    }
}

/// Built-in baseline for one episode.
pub fn builtin<S>(spec: &AgentSpec, seed: u64) -> Box<dyn Agent<S> + Send> {
    match spec {
        AgentSpec::Random => Box::new(RandomAgent::new(seed)),
        _ => Box::new(IdleAgent),
    }
}

/// Posts each message to `url`; replies come back as the response body.
pub struct HttpTransport {
    url: String,
}

impl HttpTransport {
    pub fn new(url: impl Into<String>) -> Self {
        HttpTransport { url: url.into() }
    }
}

impl Transport for HttpTransport {
    fn exchange(&mut self, msg: &WireMessage, reply: bool) -> Result<Option<WireMessage>, AgentError> {
        let mut resp = ureq::post(&self.url)
            .header("Content-Type", "application/json")
            .send(msg.to_line())
            .map_err(|e| AgentError::Unreachable(format!("{}: {e}", self.url)))?;
        if !reply {
            return Ok(None);
        }
        let body = resp.body_mut().read_to_string().map_err(|e| AgentError::Unreachable(e.to_string()))?;
        serde_json::from_str(&body).map(Some).map_err(|e| AgentError::Protocol(e.to_string()))
    }
}

/// An external agent shared across all episodes of a run.
pub fn external<S>(spec: &AgentSpec) -> Result<Box<dyn Agent<S>>, CliError> {
    match spec {
        AgentSpec::Command(cmd) => {
            let t = StdioTransport::spawn(cmd).map_err(|e| CliError::Agent(e.to_string()))?;
            Ok(Box::new(WireAgent::new(t)))
        }
        AgentSpec::Http(url) => Ok(Box::new(WireAgent::new(HttpTransport::new(url.clone())))),
        other => Err(config(format!("{other:?} is not an external agent"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("idle".parse::<AgentSpec>().unwrap(), AgentSpec::Idle);
        assert_eq!("wire:python3 bot.py".parse::<AgentSpec>().unwrap(), AgentSpec::Command("python3 bot.py".into()));
        assert_eq!("wire:http://127.0.0.1:9/a".parse::<AgentSpec>().unwrap(), AgentSpec::Http("http://127.0.0.1:9/a".into()));
        assert!("wire:".parse::<AgentSpec>().is_err());
        assert!("gpt".parse::<AgentSpec>().is_err());
    }
}
