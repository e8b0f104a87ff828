//! HTTP endpoint for the human-play panel.
//!
//! `GET /episode` describes the running episode, `GET /observation` returns
//! the pending `observe` message (204 when none is pending) and
//! `POST /act` answers it with an `act` message.

use std::net::SocketAddr;
use std::sync::{Arc, Condvar, Mutex};
use std::thread::JoinHandle;

use arena_core::harness::wire::{Transport, WireAgent, WireMessage};
use arena_core::harness::{Agent, AgentError, DecisionRequest, EpisodeInfo};
use serde_json::json;
use tiny_http::{Header, Method, Request, Response, Server};

use crate::error::{config, Result};

#[derive(Default)]
struct State {
    start: Option<WireMessage>,
    vocabulary: Vec<String>,
    pending: Option<WireMessage>,
    reply: Option<String>,
    scores: Vec<f64>,
    finished: bool,
}

type Shared = Arc<(Mutex<State>, Condvar)>;

pub struct Panel {
    shared: Shared,
    server: Arc<Server>,
    thread: Option<JoinHandle<()>>,
    addr: SocketAddr,
}

impl Panel {
    pub fn bind(addr: &str) -> Result<Panel> {
        let server = Arc::new(Server::http(addr).map_err(|e| config(format!("cannot bind {addr}: {e}")))?);
        let addr = server.server_addr().to_ip().ok_or_else(|| config("panel needs a TCP address"))?;
        let shared: Shared = Arc::default();
        let thread = {
            let server = Arc::clone(&server);
            let shared = Arc::clone(&shared);
            std::thread::spawn(move || {
                for request in server.incoming_requests() {
                    handle(request, &shared);
                }
            })
        };
        Ok(Panel { shared, server, thread: Some(thread), addr })
    }

    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn agent(&self) -> PanelAgent {
        PanelAgent { wire: WireAgent::new(PanelTransport { shared: Arc::clone(&self.shared) }), shared: Arc::clone(&self.shared) }
    }

    pub fn finish(&self) {
        let (lock, _) = &*self.shared;
        lock.lock().expect("panel state").finished = true;
    }
}

impl Drop for Panel {
    fn drop(&mut self) {
        self.server.unblock();
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

fn json_response(status: u16, body: String) -> Response<std::io::Cursor<Vec<u8>>> {
    let header = Header::from_bytes("Content-Type", "application/json").expect("static header");
    Response::from_string(body).with_status_code(status).with_header(header)
}

fn handle(mut request: Request, shared: &Shared) {
    let (lock, cvar) = &**shared;
    let path = request.url().split('?').next().unwrap_or("").to_string();
    let response = match (request.method(), path.as_str()) {
        (Method::Get, "/episode") => {
            let s = lock.lock().expect("panel state");
            let body = json!({
                "start": s.start,
                "vocabulary": s.vocabulary,
                "scores": s.scores,
                "waiting": s.pending.is_some(),
                "finished": s.finished,
            });
            json_response(200, body.to_string())
        }
        (Method::Get, "/observation") => match &lock.lock().expect("panel state").pending {
            Some(msg) => json_response(200, msg.to_line()),
            None => Response::from_string("").with_status_code(204),
        },
        (Method::Post, "/act") => {
            let mut body = String::new();
            let parsed = request.as_reader().read_to_string(&mut body).ok().and_then(|_| serde_json::from_str::<WireMessage>(&body).ok());
            match parsed {
                Some(WireMessage::Act { text }) => {
                    let mut s = lock.lock().expect("panel state");
                    if s.pending.is_some() && s.reply.is_none() {
                        s.reply = Some(text);
                        cvar.notify_all();
                        json_response(200, r#"{"accepted":true}"#.into())
                    } else {
                        json_response(409, r#"{"accepted":false,"reason":"no observation is waiting"}"#.into())
                    }
                }
                _ => json_response(400, r#"{"accepted":false,"reason":"expected an act message"}"#.into()),
            }
        }
        _ => Response::from_string("not found").with_status_code(404),
    };
    let _ = request.respond(response);
}

/// Wire transport whose replies come from the panel.
pub struct PanelTransport {
    shared: Shared,
}

impl Transport for PanelTransport {
    fn exchange(&mut self, msg: &WireMessage, reply: bool) -> std::result::Result<Option<WireMessage>, AgentError> {
        let (lock, cvar) = &*self.shared;
        let mut s = lock.lock().expect("panel state");
        match msg {
            WireMessage::EpisodeStart { .. } => {
                s.start = Some(msg.clone());
                s.pending = None;
            }
            WireMessage::EpisodeEnd { score } => s.scores.push(*score),
            _ => {}
        }
        if !reply {
            return Ok(None);
        }
        s.pending = Some(msg.clone());
        s.reply = None;
        let mut s = cvar.wait_while(s, |s| s.reply.is_none()).expect("panel state");
        s.pending = None;
        Ok(s.reply.take().map(|text| WireMessage::Act { text }))
    }
}

/// The interactive agent: a wire agent answered by the panel.
pub struct PanelAgent {
    wire: WireAgent<PanelTransport>,
    shared: Shared,
}

impl<S> Agent<S> for PanelAgent {
    fn start(&mut self, info: &EpisodeInfo) -> std::result::Result<(), AgentError> {
        self.shared.0.lock().expect("panel state").vocabulary = info.vocabulary.clone();
        Agent::<S>::start(&mut self.wire, info)
    }

    fn act(&mut self, request: &DecisionRequest<'_, S>) -> std::result::Result<String, AgentError> {
        self.wire.act(request)
    }

    fn finish(&mut self, score: f64) -> std::result::Result<(), AgentError> {
        Agent::<S>::finish(&mut self.wire, score)
    }
}
