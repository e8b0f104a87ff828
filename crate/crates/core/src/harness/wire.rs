//! Newline-delimited JSON agent protocol.
//!
//! The harness sends `episode_start`, then one `observe` per agent query
//! (retries resend the identical message) and expects an `act` reply to each,
//! and closes with `episode_end`. Every message is a single JSON object with
//! a `type` tag followed by its fields in the order declared below.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};

use serde::{Deserialize, Serialize};

use super::{Agent, AgentError, DecisionRequest, EpisodeInfo, PlannerMode, PromptSet, Turn};
use crate::raster::PPM_MIME;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WireMessage {
    EpisodeStart {
        env: String,
        mode: PlannerMode,
        prompts: PromptSet,
    },
    Observe {
        step: usize,
        text: String,
        /// Base64 PPM raster; empty when the observation has no image.
        image: String,
        mime: String,
        /// Windowed conversation the harness would show a chat model.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        context: Vec<Turn>,
    },
    Act {
        text: String,
    },
    EpisodeEnd {
        score: f64,
    },
}

impl WireMessage {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("wire messages always serialise")
    }

    pub fn observe_from<S>(request: &DecisionRequest<'_, S>) -> Self {
        let current = request.current();
        let (image, mime) = match &current.image {
            Some(img) => (img.to_base64_ppm(), PPM_MIME.to_string()),
            None => (String::new(), String::new()),
        };
        let text = request.context.last().map(|t| t.text.clone()).unwrap_or_default();
        WireMessage::Observe { step: request.step, text, image, mime, context: request.context.to_vec() }
    }
}

/// Moves wire messages to and from an external agent.
pub trait Transport {
    /// Sends `msg`; when `reply` is set, blocks for the agent's answer.
    fn exchange(&mut self, msg: &WireMessage, reply: bool) -> Result<Option<WireMessage>, AgentError>;
}

/// Adapts any [`Transport`] to the [`Agent`] interface.
pub struct WireAgent<T> {
    transport: T,
}

impl<T: Transport> WireAgent<T> {
    pub fn new(transport: T) -> Self {
        WireAgent { transport }
    }

    pub fn into_inner(self) -> T {
        self.transport
    }
}

impl<S, T: Transport> Agent<S> for WireAgent<T> {
    fn start(&mut self, info: &EpisodeInfo) -> Result<(), AgentError> {
        let msg = WireMessage::EpisodeStart { env: info.env.clone(), mode: info.mode, prompts: info.prompts.clone() };
        self.transport.exchange(&msg, false).map(|_| ())
    }

    fn act(&mut self, request: &DecisionRequest<'_, S>) -> Result<String, AgentError> {
        match self.transport.exchange(&WireMessage::observe_from(request), true)? {
            Some(WireMessage::Act { text }) => Ok(text),
            Some(other) => Err(AgentError::Protocol(format!("expected act, got {}", other.to_line()))),
            None => Err(AgentError::Protocol("no reply".into())),
        }
    }

    fn finish(&mut self, score: f64) -> Result<(), AgentError> {
        self.transport.exchange(&WireMessage::EpisodeEnd { score }, false).map(|_| ())
    }
}

/// Talks to a child process over its standard input and output.
pub struct StdioTransport {
    child: Child,
    stdin: ChildStdin,
    stdout: BufReader<ChildStdout>,
}

impl StdioTransport {
    /// Spawns `command` through `sh -c`.
    pub fn spawn(command: &str) -> Result<Self, AgentError> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| AgentError::Unreachable(format!("{command}: {e}")))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = BufReader::new(child.stdout.take().expect("piped stdout"));
        Ok(StdioTransport { child, stdin, stdout })
    }
}

impl Transport for StdioTransport {
    fn exchange(&mut self, msg: &WireMessage, reply: bool) -> Result<Option<WireMessage>, AgentError> {
        writeln!(self.stdin, "{}", msg.to_line()).map_err(|e| AgentError::Unreachable(e.to_string()))?;
        self.stdin.flush().map_err(|e| AgentError::Unreachable(e.to_string()))?;
        if !reply {
            return Ok(None);
        }
        let mut line = String::new();
        loop {
            line.clear();
            let n = self.stdout.read_line(&mut line)?;
            if n == 0 {
                return Err(AgentError::Unreachable("agent closed its output".into()));
            }
            if !line.trim().is_empty() {
                break;
            }
        }
        serde_json::from_str(line.trim()).map(Some).map_err(|e| AgentError::Protocol(e.to_string()))
    }
}

impl Drop for StdioTransport {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_is_fixed() {
        let msg = WireMessage::Observe {
            step: 3,
            text: "t".into(),
            image: "AA==".into(),
            mime: PPM_MIME.into(),
            context: vec![],
        };
        assert_eq!(msg.to_line(), r#"{"type":"observe","step":3,"text":"t","image":"AA==","mime":"image/x-portable-pixmap"}"#);
        assert_eq!(WireMessage::Act { text: "x".into() }.to_line(), r#"{"type":"act","text":"x"}"#);
        assert_eq!(WireMessage::EpisodeEnd { score: 1.5 }.to_line(), r#"{"type":"episode_end","score":1.5}"#);
        let start = WireMessage::EpisodeStart {
            env: "sokoban".into(),
            mode: PlannerMode::Online,
            prompts: PromptSet::football(),
        };
        assert!(start.to_line().starts_with(r#"{"type":"episode_start","env":"sokoban","mode":"online","prompts":{"system_prompt":"#));
    }

    #[test]
    fn parses_act_reply() {
        let msg: WireMessage = serde_json::from_str(r##"{"type":"act","text":"# action\nUp"}"##).unwrap();
        assert_eq!(msg, WireMessage::Act { text: "# action\nUp".into() });
    }
}
