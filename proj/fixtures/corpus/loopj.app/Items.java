package loopj;

import com.loopj.android.http.AsyncHttpClient;
import com.loopj.android.http.AsyncHttpResponseHandler;

class Items {
    void all(AsyncHttpClient client, AsyncHttpResponseHandler handler) {
        client.get("https://loopj.example/api/items", handler);
    }

    void create(AsyncHttpClient client, AsyncHttpResponseHandler handler) {
        client.post("https://loopj.example/api/items/new", null, handler);
    }

    void prune(AsyncHttpClient client, AsyncHttpResponseHandler handler) {
        client.delete("https://loopj.example/api/items/old", handler);
    }
}
