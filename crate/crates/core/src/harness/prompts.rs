use serde::{Deserialize, Serialize};

use super::PlannerMode;

const SOKOBAN_SYSTEM: &str = include_str!("../../assets/prompts/sokoban_system.txt");
const FOOTBALL_SYSTEM: &str = include_str!("../../assets/prompts/football_system.txt");
const WEBUI_SYSTEM: &str = include_str!("../../assets/prompts/webui_system.txt");
const SOKOBAN_GLOBAL_COT: &str = include_str!("../../assets/prompts/sokoban_global_cot.txt");
const SOKOBAN_GLOBAL_IO: &str = include_str!("../../assets/prompts/sokoban_global_io.txt");
const SOKOBAN_ONLINE_IO: &str = include_str!("../../assets/prompts/sokoban_online_io.txt");
const FOOTBALL_ONLINE_IO: &str = include_str!("../../assets/prompts/football_online_io.txt");
const WEBUI_GLOBAL_IO: &str = include_str!("../../assets/prompts/webui_global_io.txt");

/// User text preceding every online observation after the first.
pub const CONTINUE_PROMPT: &str = include_str!("../../assets/prompts/continue.txt");
/// Placeholder for observations outside the observation-memory window.
pub const IMAGE_UNAVAILABLE: &str = include_str!("../../assets/prompts/image_unavailable.txt");

/// The four prompt parts sent to an agent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSet {
    pub system_prompt: String,
    /// Task description (WebUI). Other environments use the first
    /// observation as the task and leave this empty.
    pub task_prompt: Option<String>,
    pub cot_prompt: String,
    pub io_prompt: String,
}

impl PromptSet {
    pub fn sokoban(mode: PlannerMode) -> Self {
        match mode {
            PlannerMode::Global => PromptSet {
                system_prompt: SOKOBAN_SYSTEM.trim_end().to_string(),
                task_prompt: None,
                cot_prompt: SOKOBAN_GLOBAL_COT.trim_end().to_string(),
                io_prompt: SOKOBAN_GLOBAL_IO.trim_end().to_string(),
            },
            PlannerMode::Online => PromptSet {
                system_prompt: SOKOBAN_SYSTEM.trim_end().to_string(),
                task_prompt: None,
                cot_prompt: String::new(),
                io_prompt: SOKOBAN_ONLINE_IO.trim_end().to_string(),
            },
        }
    }

    pub fn football() -> Self {
        PromptSet {
            system_prompt: FOOTBALL_SYSTEM.trim_end().to_string(),
            task_prompt: None,
            cot_prompt: String::new(),
            io_prompt: FOOTBALL_ONLINE_IO.trim_end().to_string(),
        }
    }

    pub fn webui(task_description: impl Into<String>) -> Self {
        PromptSet {
            system_prompt: WEBUI_SYSTEM.trim_end().to_string(),
            task_prompt: Some(task_description.into()),
            cot_prompt: String::new(),
            io_prompt: WEBUI_GLOBAL_IO.trim_end().to_string(),
        }
    }

    /// Instruction text that follows the first observation.
    pub fn instructions(&self) -> String {
        match (self.cot_prompt.is_empty(), self.io_prompt.is_empty()) {
            (true, _) => self.io_prompt.clone(),
            (false, true) => self.cot_prompt.clone(),
            (false, false) => format!("{}\n\n{}", self.cot_prompt, self.io_prompt),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assets_are_loaded() {
        for p in [
            PromptSet::sokoban(PlannerMode::Global),
            PromptSet::sokoban(PlannerMode::Online),
            PromptSet::football(),
            PromptSet::webui("build a page"),
        ] {
            assert!(!p.system_prompt.is_empty());
            assert!(!p.io_prompt.is_empty());
        }
        assert!(PromptSet::sokoban(PlannerMode::Global).io_prompt.contains("### Actions"));
        assert!(PromptSet::football().io_prompt.ends_with("action_left"));
        assert_eq!(IMAGE_UNAVAILABLE.trim(), "image not available.");
    }
}
