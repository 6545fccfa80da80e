package ion;

import com.koushikdutta.ion.Ion;

class Search {
    void search(Object context, String query) {
        Ion.with(context).load("https://ion.example/api/search?q=" + query).asString();
    }
}
