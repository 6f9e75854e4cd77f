/* Build: cc demo.c -I../include -L../../../target/debug -linterpol_ffi -lpthread -ldl -lm */
#include <stdio.h>
#include "interpol.h"

static int fail(const char *what) {
    const char *e = interpol_last_error();
    fprintf(stderr, "%s: %s\n", what, e ? e : "?");
    return 1;
}

int main(void) {
    InterpolOntology *o = NULL, *ui = NULL;
    if (interpol_ontology_parse("A [= some r.(B and C).\nsome r.(C and D) [= E.\n", &o) != INTERPOL_STATUS_OK)
        return fail("parse");
    if (interpol_uniform_interpolant(o, "A,B,D,E,r", NULL, &ui) != INTERPOL_STATUS_OK)
        return fail("uinterp");
    char *text = interpol_ontology_render(ui);
    printf("%s", text);
    interpol_string_free(text);

    char *i = NULL;
    if (interpol_craig_interpolant(NULL, NULL, "some child.top and all child.Doctor", "some child.(Doctor or Rich)", NULL, &i) !=
        INTERPOL_STATUS_OK)
        return fail("cinterp");
    printf("%s\n", i);
    interpol_string_free(i);

    bool holds = true;
    if (interpol_subsumes(o, "A", "B", &holds) != INTERPOL_STATUS_OK)
        return fail("subsumes");
    printf("A [= B: %s\n", holds ? "yes" : "no");

    InterpolProgram *p = NULL;
    if (interpol_program_parse("a :- not b. b :- not c. e :- d. d :- a.", &p) != INTERPOL_STATUS_OK)
        return fail("program");
    size_t n = 0;
    char *sets = NULL;
    if (interpol_answer_sets(p, &n, &sets) != INTERPOL_STATUS_OK)
        return fail("answer sets");
    printf("%zu answer set(s): %s", n, sets);
    interpol_string_free(sets);

    if (interpol_ontology_parse("A [=", &ui) != INTERPOL_STATUS_SYNTAX)
        return 1;
    printf("syntax error reported: %s\n", interpol_last_error() ? "yes" : "no");

    interpol_program_free(p);
    interpol_ontology_free(ui);
    interpol_ontology_free(o);
    return 0;
}
