import re

from .models import ERROR, Diagnostic, Token, excerpt

KEYWORDS = {
    'chart', 'complex', 'metric', 'diag', 'matrix', 'field', 'form', 'vector', 'values', 'space', 'algebra', 'dim',
    'bracket', 'check', 'on', 'grid', 'random', 'seed', 'tol', 'expect', 'true', 'false',
}

# Keywords that open a statement; the parser resynchronizes on them
STATEMENT_KEYWORDS = ('chart', 'field', 'form', 'vector', 'space', 'matrix', 'algebra', 'check')

TOKEN_PATTERNS = [
    ('WS', r'[ \t\r]+'),
    ('NEWLINE', r'\n'),
    ('COMMENT', r'\#[^\n]*'),
    ('NUMBER', r'\d+(?:\.\d+)?(?:[eE][+-]?\d+)?'),
    ('STRING', r"'[^'\n]*'|\"[^\"\n]*\""),
    ('WEDGE', r'\^w(?![A-Za-z0-9_])'),
    ('RANGE', r'\.\.'),
    ('IDENT', r'[A-Za-z_][A-Za-z0-9_]*'),
    ('OP', r'[-+*/^()\[\],;:=@]'),
]

MASTER = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in TOKEN_PATTERNS))


def tokenize(source):
    """
    Split source into tokens. Returns (tokens, diagnostics); unknown
    characters become diagnostics and are skipped.
    """
    tokens, diagnostics = [], []
    line, line_start, first = 1, 0, True
    position = 0
    while position < len(source):
        match = MASTER.match(source, position)
        if match is None:
            column = position - line_start
            diagnostics.append(Diagnostic(
                ERROR, f"unexpected character '{source[position]}'", line, column, excerpt(source, line),
            ))
            position += 1
            continue
        kind, text = match.lastgroup, match.group()
        column = position - line_start
        position = match.end()
        if kind == 'NEWLINE':
            line, line_start, first = line + 1, position, True
            continue
        if kind in ('WS', 'COMMENT'):
            continue
        if kind == 'NUMBER':
            value = float(text) if any(c in text for c in '.eE') else int(text)
        elif kind == 'STRING':
            value = text[1:-1]
        elif kind == 'IDENT' and text in KEYWORDS:
            kind, value = 'KEYWORD', text
        elif kind == 'OP':
            kind, value = text, text
        else:
            value = text
        tokens.append(Token(kind, value, line, column, first))
        first = False
    tokens.append(Token('EOF', None, line, position - line_start, first))
    return tokens, diagnostics
