"""
Pretty-printer for .grs documents. Expressions come out fully parenthesized,
so printing and reparsing yields an equal syntax tree.
"""

from . import syntax


def print_document(document):
    return ''.join(f"{print_statement(statement)}\n" for statement in document.statements)


def print_statement(statement):
    printer = STATEMENT_PRINTERS.get(type(statement))
    if printer is None:
        raise TypeError(f"Cannot print {type(statement).__name__}")
    return printer(statement)


def print_expression(node):
    if isinstance(node, syntax.Number):
        return repr(node.value)
    if isinstance(node, syntax.Name):
        return node.name
    if isinstance(node, syntax.Unary):
        return f"({node.op}{print_expression(node.operand)})"
    if isinstance(node, syntax.Binary):
        return f"({print_expression(node.left)} {node.op} {print_expression(node.right)})"
    if isinstance(node, syntax.Call):
        return f"{node.function}({print_expression(node.argument)})"
    raise TypeError(f"Cannot print {type(node).__name__} as an expression")


def print_value(node):
    if isinstance(node, syntax.ListValue):
        return f"[{', '.join(print_value(item) for item in node.items)}]"
    if isinstance(node, syntax.String):
        quote = '"' if "'" in node.value else "'"
        return f"{quote}{node.value}{quote}"
    if isinstance(node, syntax.Bool):
        return 'true' if node.value else 'false'
    return print_expression(node)


def _rows(rows):
    return '[' + ', '.join('[' + ', '.join(print_expression(e) for e in row) + ']' for row in rows) + ']'


def _chart(statement):
    flag = ' complex' if statement.is_complex else ''
    if statement.metric_kind == 'diag':
        metric = f"diag({', '.join(print_expression(e) for e in statement.metric)})"
    else:
        metric = f"matrix {_rows(statement.metric)}"
    return f"chart {statement.name}({', '.join(statement.coords)}){flag} metric {metric}"


def _field(statement):
    return f"field {statement.name} = {print_expression(statement.expr)}"


def _term(term, first):
    if first:
        head = '-' if term.sign < 0 else ''
    else:
        head = ' - ' if term.sign < 0 else ' + '
    parts = []
    if term.coefficient is not None:
        parts.append(print_expression(term.coefficient))
    if term.basis:
        parts.append(' ^w '.join(f"d{name}" for name in term.basis))
    text = head + ' * '.join(parts)
    if term.label is not None:
        text += f" @{term.label}"
    return text


def _form(statement):
    space = f" values {statement.space}" if statement.space else ''
    body = ''.join(_term(term, index == 0) for index, term in enumerate(statement.terms))
    return f"{statement.kind} {statement.name}: {statement.degree}{space} = {body}"


def _space(statement):
    return f"space {statement.name}({', '.join(statement.labels)})"


def _matrix(statement):
    return f"matrix {statement.name} = {_rows(statement.rows)}"


def _algebra(statement):
    text = f"algebra {statement.name} dim {statement.dim}"
    if statement.brackets:
        entries = ' '.join(
            f"({i}, {j}, {k}, {print_expression(c)})" for i, j, k, c in statement.brackets
        )
        text += f" bracket {entries}"
    return text


def _argument(argument):
    value = print_value(argument.value)
    return f"{argument.name}={value}" if argument.name else value


def _sample(sample):
    ranges = ', '.join(f"{print_expression(low)}..{print_expression(high)}" for low, high in sample.ranges)
    seed = f", seed {sample.seed}" if sample.kind == 'random' else ''
    return f"{sample.kind}({ranges}; {sample.count}{seed})"


def _check(statement):
    name = f"{statement.name}: " if statement.name else ''
    arguments = ', '.join(_argument(argument) for argument in statement.arguments)
    text = f"check {name}{statement.entry}({arguments}) on {_sample(statement.sample)}"
    if statement.tol is not None:
        text += f" tol {statement.tol!r}"
    if statement.expect is not None:
        text += f" expect {statement.expect}"
    return text


STATEMENT_PRINTERS = {
    syntax.ChartDecl: _chart,
    syntax.FieldDecl: _field,
    syntax.FormDecl: _form,
    syntax.SpaceDecl: _space,
    syntax.MatrixDecl: _matrix,
    syntax.AlgebraDecl: _algebra,
    syntax.CheckDecl: _check,
}
