//! Function and docstring extraction for Python sources.
//!
//! This is a recognizer for the function-definition subset of Python, not a
//! full parser. The source is lexed into logical lines (brackets, backslash
//! continuations and triple-quoted strings join physical lines), the
//! indentation structure is checked the way the CPython tokenizer checks it,
//! and every `def` / `async def` header is parsed into a [`FunctionRecord`].
//! A function's docstring is its first body statement when that statement is
//! nothing but a string literal.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::tokenize::{partition_text, Word};

/// One function definition found in a source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionRecord {
    /// Path relative to the scan root, `/`-separated.
    pub file: String,
    /// 1-based line of the `def` (or `async`) keyword.
    pub line: usize,
    pub name: String,
    pub param_names: Vec<String>,
    /// Annotation source text, parallel to `param_names`.
    pub param_types: Vec<Option<String>>,
    pub return_type: Option<String>,
    /// Decoded docstring. Empty and whitespace-only docstrings are stored as
    /// `None`.
    pub docstring: Option<String>,
    /// Number of enclosing `def`/`class` blocks.
    pub nesting_depth: usize,
}

impl FunctionRecord {
    pub fn is_documented(&self) -> bool {
        self.docstring.is_some()
    }

    /// The deduplicated set of words appearing in the name, parameter names,
    /// parameter annotations and return annotation.
    pub fn signature_word_set(&self) -> SignatureWordSet {
        SignatureWordSet::from_fragments(
            std::iter::once(self.name.as_str())
                .chain(self.param_names.iter().map(String::as_str))
                .chain(self.param_types.iter().flatten().map(String::as_str))
                .chain(self.return_type.as_deref()),
        )
    }
}

/// Set of signature words. Short and stop words are kept here; the scorer
/// decides which of them may take part in substring matching.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignatureWordSet {
    words: BTreeSet<Word>,
}

impl SignatureWordSet {
    pub fn from_fragments<'a, I>(fragments: I) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let words = fragments
            .into_iter()
            .flat_map(partition_text)
            .collect();
        SignatureWordSet { words }
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        SignatureWordSet {
            words: words.into_iter().collect(),
        }
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.contains(word)
    }

    pub fn insert(&mut self, word: Word) -> bool {
        self.words.insert(word)
    }

    /// Sorted iteration.
    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Free function form of [`FunctionRecord::signature_word_set`].
pub fn signature_word_set(rec: &FunctionRecord) -> SignatureWordSet {
    rec.signature_word_set()
}

/// A file that could not be decoded or recognized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFailure {
    pub file: String,
    pub reason: String,
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.file, self.reason)
    }
}

impl std::error::Error for ParseFailure {}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
struct SyntaxError {
    line: usize,
    message: String,
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError {
        line,
        message: message.into(),
    })
}

/// Decodes `bytes` as UTF-8 and extracts its functions.
pub fn extract_from_bytes(bytes: &[u8], file: &str) -> Result<Vec<FunctionRecord>, ParseFailure> {
    match std::str::from_utf8(bytes) {
        Ok(source) => extract_functions(source, file),
        Err(e) => Err(ParseFailure {
            file: file.to_string(),
            reason: format!("invalid UTF-8 at byte {}", e.valid_up_to()),
        }),
    }
}

/// Extracts every function definition in `source`, in source order.
pub fn extract_functions(source: &str, file: &str) -> Result<Vec<FunctionRecord>, ParseFailure> {
    let fail = |reason: String| ParseFailure {
        file: file.to_string(),
        reason,
    };
    if let Some(pos) = source.find('\0') {
        let line = source[..pos].matches('\n').count() + 1;
        return Err(fail(format!("line {line}: source contains a null byte")));
    }
    let source = source.strip_prefix('\u{feff}').unwrap_or(source);
    let normalized;
    let source = if source.contains('\r') {
        normalized = source.replace("\r\n", "\n").replace('\r', "\n");
        normalized.as_str()
    } else {
        source
    };
    let lines = Lexer::new(source).run().map_err(|e| fail(e.to_string()))?;
    walk(source, file, &lines).map_err(|e| fail(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Name,
    Number,
    Str(StrLit),
    Op,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct StrLit {
    bytes: bool,
    formatted: bool,
    value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    kind: Kind,
    start: usize,
    end: usize,
    line: usize,
}

impl Token {
    fn text<'s>(&self, src: &'s str) -> &'s str {
        &src[self.start..self.end]
    }

    fn is_op(&self, src: &str, op: &str) -> bool {
        self.kind == Kind::Op && self.text(src) == op
    }

    fn is_name(&self, src: &str, name: &str) -> bool {
        self.kind == Kind::Name && self.text(src) == name
    }
}

#[derive(Debug)]
struct LogicalLine {
    indent: usize,
    tokens: Vec<Token>,
}

const OPS3: [&str; 5] = ["**=", "//=", ">>=", "<<=", "..."];
const OPS2: [&str; 19] = [
    "->", ":=", "==", "!=", "<=", ">=", "**", "//", "<<", ">>", "+=", "-=", "*=", "/=", "%=",
    "&=", "|=", "^=", "@=",
];
const OPS1: &str = "()[]{},:;.+-*/%&|^~<>=@";

struct Lexer<'s> {
    src: &'s str,
    pos: usize,
    line: usize,
    brackets: Vec<(char, usize)>,
    lines: Vec<LogicalLine>,
    current: Option<LogicalLine>,
}

impl<'s> Lexer<'s> {
    fn new(src: &'s str) -> Self {
        Lexer {
            src,
            pos: 0,
            line: 1,
            brackets: Vec::new(),
            lines: Vec::new(),
            current: None,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(offset)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn run(mut self) -> Result<Vec<LogicalLine>, SyntaxError> {
        while self.pos < self.src.len() {
            if self.current.is_none() {
                self.start_line();
                continue;
            }
            self.lex_token()?;
        }
        if let Some(&(open, line)) = self.brackets.last() {
            return syntax(line, format!("'{open}' was never closed"));
        }
        self.finish_line();
        Ok(self.lines)
    }

    /// Measures indentation at the start of a physical line. Blank and
    /// comment-only lines produce no logical line.
    fn start_line(&mut self) {
        let mut indent = 0;
        while let Some(c) = self.peek() {
            match c {
                ' ' => indent += 1,
                '\t' => indent = (indent / 8 + 1) * 8,
                '\x0c' => indent = 0,
                _ => break,
            }
            self.bump();
        }
        match self.peek() {
            None => {}
            Some('\n') => {
                self.bump();
            }
            Some('#') => {
                self.skip_comment();
                self.bump();
            }
            Some('\\') if self.peek_at(1) == Some('\n') => {
                // a continuation on an otherwise blank line joins the next one
                self.bump();
                self.bump();
                self.current = Some(LogicalLine {
                    indent,
                    tokens: Vec::new(),
                });
            }
            Some(_) => {
                self.current = Some(LogicalLine {
                    indent,
                    tokens: Vec::new(),
                });
            }
        }
    }

    fn finish_line(&mut self) {
        if let Some(line) = self.current.take() {
            if !line.tokens.is_empty() {
                self.lines.push(line);
            }
        }
    }

    fn skip_comment(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            self.bump();
        }
    }

    fn push(&mut self, kind: Kind, start: usize, line: usize) {
        let token = Token {
            kind,
            start,
            end: self.pos,
            line,
        };
        self.current
            .as_mut()
            .expect("token outside a logical line")
            .tokens
            .push(token);
    }

    fn lex_token(&mut self) -> Result<(), SyntaxError> {
        let c = match self.peek() {
            Some(c) => c,
            None => return Ok(()),
        };
        let start = self.pos;
        let line = self.line;
        match c {
            ' ' | '\t' | '\x0c' => {
                self.bump();
            }
            '\n' => {
                self.bump();
                if self.brackets.is_empty() {
                    self.finish_line();
                }
            }
            '#' => self.skip_comment(),
            '\\' => {
                self.bump();
                if self.peek() != Some('\n') && self.peek().is_some() {
                    return syntax(line, "unexpected character after line continuation character");
                }
                self.bump();
            }
            '\'' | '"' => {
                let lit = self.lex_string("")?;
                self.push(Kind::Str(lit), start, line);
            }
            c if c.is_ascii_digit()
                || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                self.lex_number();
                self.push(Kind::Number, start, line);
            }
            c if is_ident_start(c) => {
                while self.peek().is_some_and(is_ident_continue) {
                    self.bump();
                }
                let word = &self.src[start..self.pos];
                if matches!(self.peek(), Some('\'' | '"')) && is_string_prefix(word) {
                    let lit = self.lex_string(word)?;
                    self.push(Kind::Str(lit), start, line);
                } else {
                    self.push(Kind::Name, start, line);
                }
            }
            _ => {
                self.lex_op(c, line)?;
                self.push(Kind::Op, start, line);
            }
        }
        Ok(())
    }

    fn lex_number(&mut self) {
        let hex = self.src[self.pos..].starts_with("0x") || self.src[self.pos..].starts_with("0X");
        let mut prev = '\0';
        while let Some(c) = self.peek() {
            let exponent_sign = (c == '+' || c == '-') && !hex && (prev == 'e' || prev == 'E');
            if c.is_ascii_alphanumeric() || c == '_' || c == '.' || exponent_sign {
                prev = c;
                self.bump();
            } else {
                break;
            }
        }
    }

    fn lex_op(&mut self, c: char, line: usize) -> Result<(), SyntaxError> {
        let rest = &self.src[self.pos..];
        if let Some(op) = OPS3.iter().chain(OPS2.iter()).find(|op| rest.starts_with(**op)) {
            for _ in 0..op.len() {
                self.bump();
            }
            return Ok(());
        }
        if !OPS1.contains(c) {
            return syntax(line, format!("invalid character '{c}' (U+{:04X})", c as u32));
        }
        self.bump();
        match c {
            '(' | '[' | '{' => self.brackets.push((c, line)),
            ')' | ']' | '}' => {
                let expected = match c {
                    ')' => '(',
                    ']' => '[',
                    _ => '{',
                };
                match self.brackets.pop() {
                    Some((open, _)) if open == expected => {}
                    Some((open, _)) => {
                        return syntax(
                            line,
                            format!("closing parenthesis '{c}' does not match opening parenthesis '{open}'"),
                        )
                    }
                    None => return syntax(line, format!("unmatched '{c}'")),
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Lexes a string literal whose prefix has already been consumed.
    fn lex_string(&mut self, prefix: &str) -> Result<StrLit, SyntaxError> {
        let lower = prefix.to_ascii_lowercase();
        let raw = lower.contains('r');
        let bytes = lower.contains('b');
        let formatted = lower.contains('f');
        let start_line = self.line;
        let quote = self.bump().expect("string without quote");
        let triple = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if triple {
            self.bump();
            self.bump();
        }
        let body_start = self.pos;
        loop {
            let c = match self.peek() {
                Some(c) => c,
                None if triple => {
                    return syntax(start_line, "unterminated triple-quoted string literal")
                }
                None => return syntax(start_line, "unterminated string literal"),
            };
            if c == '\\' {
                self.bump();
                if self.peek().is_some() {
                    self.bump();
                }
                continue;
            }
            if c == '\n' && !triple {
                return syntax(start_line, "unterminated string literal");
            }
            if c == quote
                && (!triple || (self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote)))
            {
                let body = &self.src[body_start..self.pos];
                let len = if triple { 3 } else { 1 };
                for _ in 0..len {
                    self.bump();
                }
                let value = if raw || bytes {
                    body.to_string()
                } else {
                    unescape(body)
                };
                return Ok(StrLit {
                    bytes,
                    formatted,
                    value,
                });
            }
            self.bump();
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c == '_' || c.is_alphabetic()
}

fn is_ident_continue(c: char) -> bool {
    c == '_' || c.is_alphanumeric() || is_combining_mark(c)
}

fn is_combining_mark(c: char) -> bool {
    matches!(c as u32,
        0x0300..=0x036F | 0x1AB0..=0x1AFF | 0x1DC0..=0x1DFF | 0x20D0..=0x20FF | 0xFE20..=0xFE2F)
}

fn is_string_prefix(word: &str) -> bool {
    let lower = word.to_ascii_lowercase();
    matches!(
        lower.as_str(),
        "r" | "u" | "b" | "f" | "br" | "rb" | "fr" | "rf"
    )
}

/// Decodes the escape sequences of a non-raw `str` literal body.
fn unescape(body: &str) -> String {
    let mut out = String::with_capacity(body.len());
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        let Some(e) = chars.next() else {
            out.push('\\');
            break;
        };
        match e {
            '\n' => {}
            '\\' => out.push('\\'),
            '\'' => out.push('\''),
            '"' => out.push('"'),
            'a' => out.push('\x07'),
            'b' => out.push('\x08'),
            'f' => out.push('\x0c'),
            'n' => out.push('\n'),
            'r' => out.push('\r'),
            't' => out.push('\t'),
            'v' => out.push('\x0b'),
            '0'..='7' => {
                let mut code = e.to_digit(8).unwrap();
                for _ in 0..2 {
                    match chars.peek().and_then(|d| d.to_digit(8)) {
                        Some(d) => {
                            code = code * 8 + d;
                            chars.next();
                        }
                        None => break,
                    }
                }
                out.extend(char::from_u32(code));
            }
            'x' | 'u' | 'U' => {
                let width = match e {
                    'x' => 2,
                    'u' => 4,
                    _ => 8,
                };
                let digits: String = chars.clone().take(width).collect();
                let code = (digits.len() == width)
                    .then(|| u32::from_str_radix(&digits, 16).ok())
                    .flatten()
                    .and_then(char::from_u32);
                match code {
                    Some(ch) => {
                        out.push(ch);
                        for _ in 0..width {
                            chars.next();
                        }
                    }
                    None => {
                        out.push('\\');
                        out.push(e);
                    }
                }
            }
            other => {
                // unknown escapes (including \N{...}) are kept verbatim
                out.push('\\');
                out.push(other);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Function(usize),
    Class,
    Other,
}

impl Block {
    fn is_scope(self) -> bool {
        !matches!(self, Block::Other)
    }
}

/// Walks logical lines, tracking indentation and the enclosing def/class
/// blocks.
fn walk(src: &str, file: &str, lines: &[LogicalLine]) -> Result<Vec<FunctionRecord>, SyntaxError> {
    let mut records: Vec<FunctionRecord> = Vec::new();
    // (indent, block that opened it)
    let mut stack: Vec<(usize, Block)> = vec![(0, Block::Other)];
    let mut pending: Option<Block> = None;

    for logical in lines {
        let line = logical.tokens[0].line;
        let top = stack.last().expect("indent stack is never empty").0;
        if logical.indent > top {
            let Some(block) = pending.take() else {
                return syntax(line, "unexpected indent");
            };
            stack.push((logical.indent, block));
            if let Block::Function(idx) = block {
                records[idx].docstring = docstring(src, statement(src, &logical.tokens));
            }
        } else {
            if pending.is_some() {
                return syntax(line, "expected an indented block");
            }
            while stack.last().is_some_and(|&(indent, _)| indent > logical.indent) {
                stack.pop();
            }
            if stack.last().map(|&(indent, _)| indent) != Some(logical.indent) {
                return syntax(line, "unindent does not match any outer indentation level");
            }
        }

        let depth = stack.iter().filter(|(_, b)| b.is_scope()).count();
        let tokens = &logical.tokens;
        let is_def = tokens[0].is_name(src, "def")
            || (tokens[0].is_name(src, "async") && tokens.get(1).is_some_and(|t| t.is_name(src, "def")));
        if is_def {
            let (mut record, body) = parse_def(src, tokens)?;
            record.file = file.to_string();
            record.nesting_depth = depth;
            if body.is_empty() {
                pending = Some(Block::Function(records.len()));
            } else {
                record.docstring = docstring(src, statement(src, body));
            }
            records.push(record);
        } else if tokens[0].is_name(src, "class") {
            let colon = header_colon(src, tokens)
                .ok_or_else(|| SyntaxError { line, message: "invalid class definition".into() })?;
            if colon + 1 == tokens.len() {
                pending = Some(Block::Class);
            }
        } else if tokens.last().is_some_and(|t| t.is_op(src, ":")) {
            pending = Some(Block::Other);
        }
    }
    if let Some(block) = pending {
        let line = lines.last().map_or(1, |l| l.tokens[0].line);
        let what = match block {
            Block::Function(_) => "function definition",
            Block::Class => "class definition",
            Block::Other => "statement",
        };
        return syntax(line, format!("expected an indented block after {what}"));
    }
    Ok(records)
}

/// Tokens of the first simple statement in `tokens` (up to a top-level `;`).
fn statement<'t>(src: &str, tokens: &'t [Token]) -> &'t [Token] {
    let mut depth = 0i32;
    for (i, t) in tokens.iter().enumerate() {
        if t.kind == Kind::Op {
            match t.text(src) {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" | "}" => depth -= 1,
                ";" if depth == 0 => return &tokens[..i],
                _ => {}
            }
        }
    }
    tokens
}

/// Returns the docstring value when `stmt` is a bare (possibly implicitly
/// concatenated, possibly parenthesized) `str` literal.
fn docstring(src: &str, mut stmt: &[Token]) -> Option<String> {
    while stmt.len() >= 2
        && stmt[0].is_op(src, "(")
        && stmt[stmt.len() - 1].is_op(src, ")")
        && matching_close(src, stmt, 0) == Some(stmt.len() - 1)
    {
        stmt = &stmt[1..stmt.len() - 1];
    }
    if stmt.is_empty() {
        return None;
    }
    let mut value = String::new();
    for t in stmt {
        match &t.kind {
            Kind::Str(lit) if !lit.bytes && !lit.formatted => value.push_str(&lit.value),
            _ => return None,
        }
    }
    if value.trim().is_empty() {
        None
    } else {
        Some(value)
    }
}

fn matching_close(src: &str, tokens: &[Token], open: usize) -> Option<usize> {
    let mut depth = 0i32;
    for (i, t) in tokens.iter().enumerate().skip(open) {
        if t.kind != Kind::Op {
            continue;
        }
        match t.text(src) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Index of the `:` ending a compound statement header.
fn header_colon(src: &str, tokens: &[Token]) -> Option<usize> {
    let mut depth = 0i32;
    for (i, t) in tokens.iter().enumerate() {
        if t.kind != Kind::Op {
            continue;
        }
        match t.text(src) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            ":" if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Parses a `def` header. Returns the record (without file and depth) and
/// the tokens following the header colon.
fn parse_def<'t>(src: &str, tokens: &'t [Token]) -> Result<(FunctionRecord, &'t [Token]), SyntaxError> {
    let line = tokens[0].line;
    let bad = |message: &str| SyntaxError {
        line,
        message: message.to_string(),
    };
    let mut i = if tokens[0].is_name(src, "async") { 2 } else { 1 };
    let name_tok = tokens.get(i).filter(|t| t.kind == Kind::Name).ok_or_else(|| bad("expected function name after 'def'"))?;
    let name = name_tok.text(src).to_string();
    i += 1;
    // PEP 695 type parameter list
    if tokens.get(i).is_some_and(|t| t.is_op(src, "[")) {
        i = matching_close(src, tokens, i).ok_or_else(|| bad("unclosed type parameter list"))? + 1;
    }
    if !tokens.get(i).is_some_and(|t| t.is_op(src, "(")) {
        return Err(bad("expected '(' after function name"));
    }
    let close = matching_close(src, tokens, i).ok_or_else(|| bad("unclosed parameter list"))?;
    let (param_names, param_types) = parse_params(src, &tokens[i + 1..close], line)?;
    i = close + 1;

    let mut return_type = None;
    if tokens.get(i).is_some_and(|t| t.is_op(src, "->")) {
        let start = i + 1;
        let colon = header_colon(src, &tokens[start..]).ok_or_else(|| bad("expected ':' after return annotation"))? + start;
        if colon == start {
            return Err(bad("empty return annotation"));
        }
        return_type = Some(span_text(src, &tokens[start..colon]));
        i = colon;
    }
    if !tokens.get(i).is_some_and(|t| t.is_op(src, ":")) {
        return Err(bad("expected ':' after function signature"));
    }
    let record = FunctionRecord {
        file: String::new(),
        line,
        name,
        param_names,
        param_types,
        return_type,
        docstring: None,
        nesting_depth: 0,
    };
    Ok((record, &tokens[i + 1..]))
}

fn span_text(src: &str, tokens: &[Token]) -> String {
    src[tokens[0].start..tokens[tokens.len() - 1].end].to_string()
}

#[allow(clippy::type_complexity)]
fn parse_params(
    src: &str,
    tokens: &[Token],
    line: usize,
) -> Result<(Vec<String>, Vec<Option<String>>), SyntaxError> {
    let mut names = Vec::new();
    let mut types = Vec::new();
    let mut groups: Vec<&[Token]> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.kind != Kind::Op {
            continue;
        }
        match t.text(src) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            "," if depth == 0 => {
                groups.push(&tokens[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    groups.push(&tokens[start..]);
    let last = groups.len() - 1;

    for (g, group) in groups.into_iter().enumerate() {
        if group.is_empty() {
            // only a trailing comma may leave an empty group
            if g == last && g > 0 {
                continue;
            }
            if g == 0 && last == 0 {
                break;
            }
            return syntax(line, "invalid syntax in parameter list");
        }
        let mut k = 0;
        if group[0].is_op(src, "/") || group[0].is_op(src, "*") && group.len() == 1 {
            if group.len() != 1 {
                return syntax(line, "invalid syntax in parameter list");
            }
            continue;
        }
        if group[0].is_op(src, "*") || group[0].is_op(src, "**") {
            k = 1;
        }
        let Some(name) = group.get(k).filter(|t| t.kind == Kind::Name) else {
            return syntax(line, "invalid parameter");
        };
        k += 1;
        let mut annotation = None;
        if group.get(k).is_some_and(|t| t.is_op(src, ":")) {
            let ann_start = k + 1;
            let mut ann_end = group.len();
            let mut d = 0i32;
            for (j, t) in group.iter().enumerate().skip(ann_start) {
                if t.kind != Kind::Op {
                    continue;
                }
                match t.text(src) {
                    "(" | "[" | "{" => d += 1,
                    ")" | "]" | "}" => d -= 1,
                    "=" if d == 0 => {
                        ann_end = j;
                        break;
                    }
                    _ => {}
                }
            }
            if ann_end == ann_start {
                return syntax(line, "empty parameter annotation");
            }
            annotation = Some(span_text(src, &group[ann_start..ann_end]));
            k = ann_end;
        }
        if k < group.len() && (!group[k].is_op(src, "=") || k + 1 == group.len()) {
            return syntax(line, "invalid parameter");
        }
        names.push(name.text(src).to_string());
        types.push(annotation);
    }
    Ok((names, types))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn extract(src: &str) -> Vec<FunctionRecord> {
        extract_functions(src, "m.py").expect("parse")
    }

    fn failure(src: &str) -> String {
        extract_functions(src, "m.py").expect_err("should fail").reason
    }

    #[test]
    fn minimal_documented_function() {
        let recs = extract("def f(x): \"doc\"\n");
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(r.name, "f");
        assert_eq!(r.param_names, ["x"]);
        assert_eq!(r.param_types, [None]);
        assert_eq!(r.docstring.as_deref(), Some("doc"));
        assert_eq!(r.line, 1);
        assert_eq!(r.nesting_depth, 0);
        assert_eq!(r.file, "m.py");
    }

    #[test]
    fn undocumented_function() {
        let recs = extract("def g(a, b): return a\n");
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].param_names, ["a", "b"]);
        assert!(recs[0].docstring.is_none());
    }

    #[test]
    fn nested_definitions_have_increasing_depth() {
        let src = "\
def outer():
    class Inner:
        def method(self):
            def helper():
                pass
            return helper
    return Inner
";
        let recs = extract(src);
        let summary: Vec<_> = recs.iter().map(|r| (r.name.as_str(), r.line, r.nesting_depth)).collect();
        assert_eq!(summary, [("outer", 1, 0), ("method", 3, 2), ("helper", 4, 3)]);
    }

    #[test]
    fn annotations_defaults_and_star_params() {
        let src = "\
@decorator(key=lambda x: x)
async def fetch(self, url: str, /, *args: int, timeout: Optional[float] = None,
                key=lambda k: k, **kwargs: Dict[str, Any]) -> List[bytes]:
    '''Fetch the url.'''
";
        let recs = extract(src);
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(r.line, 2);
        assert_eq!(r.name, "fetch");
        assert_eq!(r.param_names, ["self", "url", "args", "timeout", "key", "kwargs"]);
        assert_eq!(
            r.param_types,
            [
                None,
                Some("str".to_string()),
                Some("int".to_string()),
                Some("Optional[float]".to_string()),
                None,
                Some("Dict[str, Any]".to_string())
            ]
        );
        assert_eq!(r.return_type.as_deref(), Some("List[bytes]"));
        assert_eq!(r.docstring.as_deref(), Some("Fetch the url."));
    }

    #[test]
    fn keyword_only_marker_is_not_a_parameter() {
        let recs = extract("def f(a, *, b=1,):\n    pass\n");
        assert_eq!(recs[0].param_names, ["a", "b"]);
    }

    #[test]
    fn docstring_must_be_first_statement() {
        let src = "\
def a():
    x = 1
    \"not a docstring\"

def b():
    # comment first is fine

    \"\"\"Real
    docstring.\"\"\"

def c():
    f\"formatted {x}\"

def d():
    b\"bytes\"

def e():
    \"doc\".strip()

def g():
    (\"paren\" 'thesized')

def h(): 'inline'; return 1
";
        let docs: Vec<_> = extract(src).into_iter().map(|r| (r.name, r.docstring)).collect();
        assert_eq!(
            docs,
            [
                ("a".to_string(), None),
                ("b".to_string(), Some("Real\n    docstring.".to_string())),
                ("c".to_string(), None),
                ("d".to_string(), None),
                ("e".to_string(), None),
                ("g".to_string(), Some("parenthesized".to_string())),
                ("h".to_string(), Some("inline".to_string())),
            ]
        );
    }

    #[test]
    fn whitespace_docstring_counts_as_missing() {
        let recs = extract("def f():\n    \"\"\"   \n   \"\"\"\n");
        assert!(recs[0].docstring.is_none());
    }

    #[test]
    fn escapes_are_decoded_except_in_raw_strings() {
        let recs = extract("def f():\n    'a\\tb\\x41\\u00e9\\\\'\ndef g():\n    r'a\\tb'\n");
        assert_eq!(recs[0].docstring.as_deref(), Some("a\tbAé\\"));
        assert_eq!(recs[1].docstring.as_deref(), Some("a\\tb"));
    }

    #[test]
    fn strings_hide_keywords_and_brackets() {
        let src = "x = '''\ndef fake():\n    (\n'''\ny = \"def also_fake(: #\"\ndef real(): pass\n";
        let recs = extract(src);
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].name, "real");
        assert_eq!(recs[0].line, 6);
    }

    #[test]
    fn class_docstrings_are_ignored() {
        let recs = extract("class A:\n    \"\"\"Class doc.\"\"\"\n    def m(self):\n        pass\n");
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].name, "m");
        assert_eq!(recs[0].nesting_depth, 1);
        assert!(recs[0].docstring.is_none());
    }

    #[test]
    fn no_functions_is_not_a_failure() {
        assert!(extract("").is_empty());
        assert!(extract("import os\nx = [1,\n 2]\n").is_empty());
    }

    #[test]
    fn crlf_and_bom_are_accepted() {
        let recs = extract("\u{feff}def f():\r\n    'doc'\r\n");
        assert_eq!(recs[0].docstring.as_deref(), Some("doc"));
    }

    #[test]
    fn continuation_lines() {
        let recs = extract("def f(a,\n      b) \\\n        -> int:\n    'doc'\n");
        assert_eq!(recs[0].param_names, ["a", "b"]);
        assert_eq!(recs[0].return_type.as_deref(), Some("int"));
    }

    #[test]
    fn tabs_indent_to_multiples_of_eight() {
        let recs = extract("def f():\n\tif x:\n\t    y = 1\n        'not doc'\n");
        assert_eq!(recs.len(), 1);
    }

    #[test]
    fn syntax_errors_become_failures() {
        assert!(failure("def f(:\n    pass\n").contains("line 1"));
        assert!(failure("def f(x)\n    pass\n").contains("expected ':'"));
        assert!(failure("def f():\nreturn 1\n").contains("expected an indented block"));
        assert!(failure("x = 1\n    y = 2\n").contains("unexpected indent"));
        assert!(failure("if x:\n        a\n    b\n").contains("unindent"));
        assert!(failure("x = 'abc\n").contains("unterminated string"));
        assert!(failure("x = '''abc\n").contains("unterminated triple-quoted"));
        assert!(failure("x = (1, 2\n").contains("never closed"));
        assert!(failure("x = 1)\n").contains("unmatched"));
        assert!(failure("x = [1)\n").contains("does not match"));
        assert!(failure("x = $y\n").contains("invalid character"));
        assert!(failure("def f((a, b)):\n    pass\n").contains("invalid parameter"));
        assert!(failure("x = 1\0\n").contains("null byte"));
        assert!(failure("def f():\n").contains("expected an indented block"));
    }

    #[test]
    fn undecodable_bytes_fail() {
        let err = extract_from_bytes(b"def f():\n    '\xff\xfe'\n", "bad.py").unwrap_err();
        assert_eq!(err.file, "bad.py");
        assert!(err.reason.contains("UTF-8"));
    }

    #[test]
    fn signature_word_set_unions_all_parts() {
        let rec = FunctionRecord {
            file: "x.py".into(),
            line: 1,
            name: "setToolTipText".into(),
            param_names: vec!["text".into()],
            param_types: vec![Some("String".into())],
            return_type: None,
            docstring: None,
            nesting_depth: 0,
        };
        let words: Vec<_> = rec.signature_word_set().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["set", "string", "text", "tip", "tool"]);

        let f = FunctionRecord { name: "f".into(), param_names: vec![], param_types: vec![], ..rec.clone() };
        let words: Vec<_> = f.signature_word_set().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["f"]);

        let r = FunctionRecord {
            name: "read_info".into(),
            param_names: vec!["info".into()],
            param_types: vec![None],
            ..rec
        };
        let words: Vec<_> = r.signature_word_set().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["info", "read"]);
    }

    #[test]
    fn defaults_never_reach_signature_words() {
        let recs = extract("def f(mode='verbose_output', n: int = DEFAULT_LIMIT):\n    pass\n");
        let words: Vec<_> = recs[0].signature_word_set().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["f", "int", "mode", "n"]);
    }
}
